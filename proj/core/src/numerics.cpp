#include "relaybf/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

ComplexMatrix hermitian_from_lower(const ComplexMatrix& source) {
  const Eigen::Index n = source.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j, j) = Complex(source(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      out(i, j) = source(i, j);
      out(j, i) = std::conj(source(i, j));
    }
  }
  return out;
}

void require_square_match(const HermitianMatrix& a, Eigen::Index n, const char* what) {
  if (a.dim() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": matrix is " + std::to_string(a.dim()) + "x" +
                    std::to_string(a.dim()) + ", vector has length " + std::to_string(n));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::Index dim) : data_(ComplexMatrix::Zero(dim, dim)) {}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& source) {
  if (source.rows() != source.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "Hermitian matrix must be square");
  }
  data_ = hermitian_from_lower(source);
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::outer(const ComplexVector& x) {
  return HermitianMatrix(ComplexMatrix(x * x.adjoint()));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(ComplexMatrix(d.cast<Complex>().asDiagonal()), Trusted{});
}

double HermitianMatrix::max_abs() const {
  return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

double HermitianMatrix::trace() const { return data_.trace().real(); }

HermitianMatrix HermitianMatrix::block(Eigen::Index first, Eigen::Index size) const {
  return HermitianMatrix(ComplexMatrix(data_.block(first, first, size, size)), Trusted{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(ComplexMatrix(a.data_ + b.data_), HermitianMatrix::Trusted{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(ComplexMatrix(a.data_ - b.data_), HermitianMatrix::Trusted{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(ComplexMatrix(s * a.data_), HermitianMatrix::Trusted{});
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix cholesky(const HermitianMatrix& a, const NumericTolerances& tol) {
  const Eigen::Index n = a.dim();
  const ComplexMatrix& A = a.dense();
  double max_diag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, A(i, i).real());
  const double pivot_floor = tol.pivot_factor * static_cast<double>(n) *
                             std::numeric_limits<double>::epsilon() * max_diag;

  ComplexMatrix L = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = A(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(L(j, k));
    if (!(pivot > pivot_floor) || max_diag <= 0.0) {
      throw Error(ErrorKind::kNotPositiveDefinite,
                  "pivot " + std::to_string(j) + " is " + std::to_string(pivot));
    }
    const double ljj = std::sqrt(pivot);
    L(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = A(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
      L(i, j) = s / ljj;
    }
  }
  return L;
}

ComplexVector cholesky_solve(const ComplexMatrix& lower, const ComplexVector& b) {
  const Eigen::Index n = lower.rows();
  if (b.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "cholesky_solve: right-hand side length");
  }
  // forward: L y = b
  ComplexVector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= lower(i, k) * y(k);
    y(i) = s / lower(i, i).real();
  }
  // backward: L^H x = y
  ComplexVector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Complex s = y(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= std::conj(lower(k, i)) * x(k);
    x(i) = s / lower(i, i).real();
  }
  return x;
}

ComplexVector solve_hermitian_pd(const HermitianMatrix& a, const ComplexVector& b,
                                 const NumericTolerances& tol) {
  require_square_match(a, b.size(), "solve_hermitian_pd");
  return cholesky_solve(cholesky(a, tol), b);
}

RealVector eigenvalues(const HermitianMatrix& a) {
  if (a.dim() == 0) return RealVector();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumericalFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return eigenvalues(a)(0);
}

bool is_psd(const HermitianMatrix& a, double slack) {
  return min_eigenvalue(a) >= -slack * (1.0 + a.max_abs());
}

double quadratic_form(const HermitianMatrix& a, const ComplexVector& x) {
  require_square_match(a, x.size(), "quadratic_form");
  const ComplexMatrix& A = a.dense();
  double diag = 0.0;
  Complex off = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    diag += A(j, j).real() * std::norm(x(j));
    for (Eigen::Index i = j + 1; i < x.size(); ++i) off += std::conj(x(i)) * A(i, j) * x(j);
  }
  return diag + 2.0 * off.real();
}

double inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "inner: matrix sizes differ");
  }
  // trace(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
  double s = 0.0;
  const ComplexMatrix& A = a.dense();
  const ComplexMatrix& B = b.dense();
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) s += (A(i, j) * std::conj(B(i, j))).real();
  }
  return s;
}

}  // namespace relaybf
