#pragma once

// Independent reference implementations used to check the library.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ddsim/operator.hpp"

namespace oracle {

using ddsim::Complex;
using ddsim::Matrix;

inline Matrix random_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline Matrix random_hermitian(int d, std::mt19937_64& rng) {
  const Matrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

inline Matrix random_density(int d, std::mt19937_64& rng) {
  const Matrix m = random_matrix(d, rng);
  Matrix rho = m * m.adjoint();
  return rho / rho.trace();
}

// exp(-i h t) by scaling and squaring of a truncated Taylor series.
inline Matrix taylor_expm(const Matrix& h, double t) {
  const Matrix a = Complex(0.0, -t) * h;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Matrix x = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(h.rows(), h.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * x / static_cast<double>(k)).eval();
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

// Tr_B by explicit index loops, system index major.
inline Matrix loop_partial_trace(const Matrix& rho, int ds, int db) {
  Matrix out = Matrix::Zero(ds, ds);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j)
      for (int b = 0; b < db; ++b) out(i, j) += rho(i * db + b, j * db + b);
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Half the sum of absolute eigenvalues of the Hermitian difference.
inline double eig_trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (diff + diff.adjoint()));
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

// Row-major vectorization.
inline Eigen::VectorXcd vec(const Matrix& m) {
  Eigen::VectorXcd v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

inline Matrix unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
  return m;
}

// Null space of X -> [X, g] for every g, from an SVD of the stacked
// commutation superoperators.
inline std::vector<Matrix> nullspace_commutant(const std::vector<Matrix>& elements) {
  const Eigen::Index d = elements.front().rows();
  const Eigen::Index d2 = d * d;
  Matrix stacked(d2 * static_cast<Eigen::Index>(elements.size()), d2);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (Eigen::Index col = 0; col < d2; ++col) {
      Matrix unit = Matrix::Zero(d, d);
      unit(col / d, col % d) = 1.0;
      const Matrix& g = elements[k];
      stacked.block(static_cast<Eigen::Index>(k) * d2, col, d2, 1) = vec(unit * g - g * unit);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<Matrix> basis;
  for (Eigen::Index k = 0; k < d2; ++k) {
    const double sv = k < s.size() ? s(k) : 0.0;
    if (sv < 1e-9) basis.push_back(unvec(svd.matrixV().col(k), d));
  }
  return basis;
}

// Largest distance of a vector in span(a) from span(b), both given as
// Hilbert-Schmidt orthonormal lists.
inline double span_residual(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double worst = 0.0;
  for (const auto& x : a) {
    Matrix r = x;
    for (const auto& y : b) r -= (y.adjoint() * x).trace() * y;
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace oracle
