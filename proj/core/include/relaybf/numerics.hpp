#pragma once

// Dense complex linear algebra for the small Hermitian systems the solvers
// work with (a handful of relays, so everything is dense and unblocked).

#include <complex>

#include <Eigen/Dense>

namespace relaybf {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major (Eigen default). Entry (i, j) is row i,
/// column j, zero based.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance constants shared by the kernel and cited by the certificates.
struct NumericTolerances {
  /// Cholesky pivots must exceed dim * eps * max|diag| times this factor.
  double pivot_factor = 1.0;
  /// Relative residual bound for linear solves.
  double residual = 1e-10;
  /// Slack allowed below zero when testing positive semidefiniteness,
  /// scaled by (1 + max|A_ij|).
  double psd_slack = 1e-9;
};

inline constexpr NumericTolerances kDefaultTolerances{};

/// Hermitian matrix. Construction keeps the lower triangle of the source,
/// mirrors it into the upper triangle and zeroes the imaginary part of the
/// diagonal, so conjugate symmetry holds exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::Index dim);
  explicit HermitianMatrix(const ComplexMatrix& source);

  static HermitianMatrix identity(Eigen::Index dim);
  /// x x^H
  static HermitianMatrix outer(const ComplexVector& x);
  static HermitianMatrix diagonal(const RealVector& d);

  Eigen::Index dim() const { return data_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
  const ComplexMatrix& dense() const { return data_; }

  double max_abs() const;
  double trace() const;

  /// The principal block on rows/columns [first, first + size).
  HermitianMatrix block(Eigen::Index first, Eigen::Index size) const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix data, Trusted) : data_(std::move(data)) {}

  ComplexMatrix data_;
};

/// Entrywise comparison within an absolute tolerance. Shapes must agree.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Lower-triangular L with L L^H = A. Throws Error(kNotPositiveDefinite) when
/// a pivot falls to dim * eps * max-diagonal or below.
ComplexMatrix cholesky(const HermitianMatrix& a,
                       const NumericTolerances& tol = kDefaultTolerances);

/// Solves L L^H x = b given the factor from cholesky().
ComplexVector cholesky_solve(const ComplexMatrix& lower, const ComplexVector& b);

/// Solves A x = b for positive definite A via cholesky().
ComplexVector solve_hermitian_pd(const HermitianMatrix& a, const ComplexVector& b,
                                 const NumericTolerances& tol = kDefaultTolerances);

/// All eigenvalues in ascending order.
RealVector eigenvalues(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);

/// True when min_eigenvalue(a) >= -slack * (1 + max|a_ij|).
bool is_psd(const HermitianMatrix& a, double slack = kDefaultTolerances.psd_slack);

/// x^H A x. Computed from one triangle so the result is real by construction.
double quadratic_form(const HermitianMatrix& a, const ComplexVector& x);

/// Frobenius inner product trace(A B) of two Hermitian matrices (real).
double inner(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace relaybf
