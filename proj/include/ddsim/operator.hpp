#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
// Structural identities (projector algebra, unitarity, hermiticity).
inline constexpr double kStructural = 1e-10;
// Iterative / numerical comparisons.
inline constexpr double kNumerical = 1e-8;
}  // namespace tol

// Largest total Hilbert-space dimension any operator may have.
inline constexpr int kMaxDimension = 4096;

/// Raised for malformed inputs: shape mismatches, non-Hermitian generators,
/// out-of-range factor counts, dimension cap violations.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense complex square matrix over a tensor-product Hilbert space.
///
/// `dims` lists the tensor factor dimensions, system factors first. The
/// product of `dims` always equals the matrix dimension.
class Operator {
 public:
  Operator();
  explicit Operator(Matrix entries);
  Operator(Matrix entries, Dims dims);

  static Operator identity(const Dims& dims);
  static Operator zero(const Dims& dims);

  const Matrix& entries() const { return entries_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  Operator adjoint() const;
  Complex trace() const { return entries_.trace(); }
  double max_abs() const;

  bool is_hermitian(double tolerance = tol::kStructural) const;
  bool is_unitary(double tolerance = tol::kStructural) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scalar);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix entries_;
  Dims dims_;
};

int product(const Dims& dims);

/// Kronecker product; `a`'s indices are the major ones.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(const std::vector<Operator>& factors);

/// e^{-iHt} for Hermitian H via eigendecomposition.
Operator expm_hermitian(const Operator& h, double t);

/// Tr_B over every factor after the first `n_system_factors`.
Operator partial_trace_bath(const Operator& rho, std::size_t n_system_factors);

enum class Metric { frobenius, trace };

double distance(const Operator& a, const Operator& b, Metric metric);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const Operator& a, const Operator& b);
double frobenius_norm(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

/// A <- A (A^dagger A)^{-1/2}; removes accumulated non-unitarity.
Operator polar_unitarize(const Operator& u);

/// Pure-state projector |psi><psi| (psi is normalized first).
Operator projector(const Vector& psi, const Dims& dims);

}  // namespace ddsim
