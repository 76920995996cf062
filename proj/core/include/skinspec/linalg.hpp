#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace skinspec {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  /// A - shift * I.
  CMatrix shifted(Complex shift) const;
  /// Leading n x n principal submatrix.
  CMatrix leading_block(std::size_t n) const;
  CMatrix transpose() const;

  CVector apply(std::span<const Complex> x) const;

  double frobenius_norm() const;
  double max_abs() const;
  /// Maximum absolute row sum.
  double inf_norm() const;
  bool all_finite() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(CMatrix lhs, Complex scale);
CMatrix operator*(Complex scale, CMatrix rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

struct EigenPair {
  Complex value;
  CVector vector;  // unit Euclidean norm
};

/// All eigenpairs of a square matrix, sorted by (real, imag) of the eigenvalue.
/// Throws InvalidInput for non-square or non-finite input and ConvergenceError
/// if the Schur iteration does not converge.
std::vector<EigenPair> eig_dense(const CMatrix& a);

/// Eigenvalues only, same ordering as eig_dense.
CVector eigenvalues(const CMatrix& a);

/// Smallest singular value sigma_min(A); zero for an empty matrix.
double smallest_singular_value(const CMatrix& a);

/// sigma_min(A - lambda I) for many shifts of one square matrix. A
/// tridiagonal A is factored per shift by pivoted LU in O(n); anything else
/// is reduced once to complex Schur form A = Q T Q^* and solved triangularly.
/// Either way inverse Lanczos on (A - lambda)^* (A - lambda) yields the
/// smallest singular value, agreeing with smallest_singular_value to about
/// 1e-7 relative above an absolute floor near machine epsilon times ||A||.
/// Copies share the factorization; concurrent calls are safe.
class ShiftedSigmaMin {
 public:
  explicit ShiftedSigmaMin(const CMatrix& a);
  double operator()(Complex lambda) const;
  std::size_t size() const noexcept { return n_; }

 private:
  struct Schur;
  std::size_t n_ = 0;
  std::shared_ptr<const Schur> schur_;
};

/// The `count` smallest singular values in ascending order together with
/// their right singular vectors.
struct SingularSubspace {
  std::vector<double> values;
  std::vector<CVector> right_vectors;
};
SingularSubspace smallest_singular_subspace(const CMatrix& a, std::size_t count);

/// Roots of c[0] x^n + c[1] x^(n-1) + ... + c[n] (highest degree first).
/// Leading zeros are trimmed; the zero polynomial is rejected.
CVector poly_roots(std::span<const Complex> coeffs);

struct LeastSquaresSolution {
  CVector x;
  double residual = 0.0;  // ||A x - b||
};

/// Minimum-norm least-squares solution; rank deficiency is expected and
/// handled by a relative singular-value cutoff.
LeastSquaresSolution solve_least_squares(const CMatrix& a, std::span<const Complex> b);

double norm2(std::span<const Complex> x);
double max_abs(std::span<const Complex> x);

/// Lexicographic (real, imag) comparison used for every deterministic ordering.
bool complex_less(const Complex& lhs, const Complex& rhs);
void sort_complex(CVector& values);

}  // namespace skinspec
