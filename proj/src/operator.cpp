#include "ddsim/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ddsim {
namespace {

void check_dims(const Matrix& m, const Dims& dims) {
  if (m.rows() != m.cols()) {
    throw StructuralError("operator must be square, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  if (dims.empty()) throw StructuralError("operator dims must be non-empty");
  for (int d : dims) {
    if (d < 1) throw StructuralError("tensor factor dimensions must be positive");
  }
  if (product(dims) != m.rows()) {
    throw StructuralError("product of dims (" + std::to_string(product(dims)) +
                          ") does not match matrix dimension " + std::to_string(m.rows()));
  }
  if (m.rows() > kMaxDimension) {
    throw StructuralError("dimension " + std::to_string(m.rows()) + " exceeds cap " +
                          std::to_string(kMaxDimension));
  }
}

void check_same_shape(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw StructuralError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

int product(const Dims& dims) {
  long long p = 1;
  for (int d : dims) {
    p *= d;
    if (p > static_cast<long long>(kMaxDimension) * kMaxDimension) {
      throw StructuralError("tensor dimension overflow");
    }
  }
  return static_cast<int>(p);
}

Operator::Operator() : entries_(Matrix::Zero(1, 1)), dims_{1} {}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  dims_ = {static_cast<int>(entries_.rows())};
  check_dims(entries_, dims_);
}

Operator::Operator(Matrix entries, Dims dims) : entries_(std::move(entries)), dims_(std::move(dims)) {
  check_dims(entries_, dims_);
}

Operator Operator::identity(const Dims& dims) {
  const int d = product(dims);
  return Operator(Matrix::Identity(d, d), dims);
}

Operator Operator::zero(const Dims& dims) {
  const int d = product(dims);
  return Operator(Matrix::Zero(d, d), dims);
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), dims_); }

double Operator::max_abs() const { return entries_.size() == 0 ? 0.0 : entries_.cwiseAbs().maxCoeff(); }

bool Operator::is_hermitian(double tolerance) const {
  const double scale = std::max(1.0, max_abs());
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tolerance * scale;
}

bool Operator::is_unitary(double tolerance) const {
  const Matrix residual = entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim());
  return residual.cwiseAbs().maxCoeff() <= tolerance;
}

Operator& Operator::operator+=(const Operator& other) {
  check_same_shape(*this, other, "operator+");
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  check_same_shape(*this, other, "operator-");
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex scalar) {
  entries_ *= scalar;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  check_same_shape(a, b, "operator*");
  Matrix m = a.entries_ * b.entries_;
  return Operator(std::move(m), a.dims_);
}

Operator tensor(const Operator& a, const Operator& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  if (da * db > kMaxDimension) {
    throw StructuralError("tensor product dimension " + std::to_string(da * db) + " exceeds cap " +
                          std::to_string(kMaxDimension));
  }
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
  }
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Operator(std::move(out), std::move(dims));
}

Operator tensor(const std::vector<Operator>& factors) {
  if (factors.empty()) throw StructuralError("tensor of an empty factor list");
  Operator out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Operator expm_hermitian(const Operator& h, double t) {
  if (!h.is_hermitian()) throw StructuralError("expm_hermitian: generator is not Hermitian");
  if (t == 0.0) return Operator::identity(h.dims());
  // Symmetrize so the eigensolver sees an exactly Hermitian matrix.
  const Matrix herm = 0.5 * (h.entries() + h.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
  const Eigen::VectorXd& w = eig.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex(0.0, -w(k) * t));
  const Matrix& v = eig.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint(), h.dims());
}

Operator partial_trace_bath(const Operator& rho, std::size_t n_system_factors) {
  const Dims& dims = rho.dims();
  if (n_system_factors < 1 || n_system_factors > dims.size()) {
    throw StructuralError("partial_trace_bath: cannot keep " + std::to_string(n_system_factors) +
                          " of " + std::to_string(dims.size()) + " factors");
  }
  const Dims kept(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(n_system_factors));
  const Eigen::Index ds = product(kept);
  const Eigen::Index db = rho.dim() / ds;
  Matrix out = Matrix::Zero(ds, ds);
  const Matrix& r = rho.entries();
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) {
      out(i, j) = r.block(i * db, j * db, db, db).trace();
    }
  }
  return Operator(std::move(out), kept);
}

double distance(const Operator& a, const Operator& b, Metric metric) {
  check_same_shape(a, b, "distance");
  const Matrix diff = a.entries() - b.entries();
  switch (metric) {
    case Metric::frobenius:
      return diff.norm();
    case Metric::trace: {
      Eigen::JacobiSVD<Matrix> svd(diff);
      return 0.5 * svd.singularValues().sum();
    }
  }
  return 0.0;
}

Complex hs_inner(const Operator& a, const Operator& b) {
  check_same_shape(a, b, "hs_inner");
  return (a.entries().conjugate().cwiseProduct(b.entries())).sum();
}

double frobenius_norm(const Operator& a) { return a.entries().norm(); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator polar_unitarize(const Operator& u) {
  const Matrix gram = u.entries().adjoint() * u.entries();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gram + gram.adjoint()));
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix& v = eig.eigenvectors();
  const Matrix correction = v * inv_sqrt.cast<Complex>().asDiagonal() * v.adjoint();
  return Operator(u.entries() * correction, u.dims());
}

Operator projector(const Vector& psi, const Dims& dims) {
  const double n = psi.norm();
  if (n == 0.0) throw StructuralError("projector of the zero vector");
  const Vector unit = psi / n;
  return Operator(unit * unit.adjoint(), dims);
}

}  // namespace ddsim
