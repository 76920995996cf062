#include "skinspec/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "skinspec/error.hpp"

namespace skinspec {

namespace {

using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

Eigen::Map<const DenseMatrix> as_eigen(const CMatrix& a) {
  return {a.entries().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

CVector to_vector(const DenseVector& v) { return {v.data(), v.data() + v.size()}; }

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw InvalidInput(std::string(op) + ": matrix is " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + ", expected square");
  }
}

void require_finite(const CMatrix& a, const char* op) {
  if (!a.all_finite()) throw InvalidInput(std::string(op) + ": matrix has non-finite entries");
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw InvalidInput("CMatrix: entry count " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("CMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("CMatrix +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("CMatrix -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

CMatrix CMatrix::shifted(Complex shift) const {
  CMatrix out = *this;
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) out(i, i) -= shift;
  return out;
}

CMatrix CMatrix::leading_block(std::size_t n) const {
  if (n > rows_ || n > cols_) throw InvalidInput("leading_block: size exceeds matrix");
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = (*this)(i, j);
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

CVector CMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != cols_) throw InvalidInput("CMatrix::apply: dimension mismatch");
  CVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < cols_; ++j) acc += data_[i * cols_ + j] * x[j];
    y[i] = acc;
  }
  return y;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& x : data_) acc += std::norm(x);
  return std::sqrt(acc);
}

double CMatrix::max_abs() const { return skinspec::max_abs(data_); }

double CMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row += std::abs(data_[i * cols_ + j]);
    best = std::max(best, row);
  }
  return best;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
CMatrix operator*(CMatrix lhs, Complex scale) { return lhs *= scale; }
CMatrix operator*(Complex scale, CMatrix rhs) { return rhs *= scale; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw InvalidInput("CMatrix *: shape mismatch");
  CMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t l = 0; l < lhs.cols(); ++l) {
      const Complex x = lhs(i, l);
      if (x == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += x * rhs(l, j);
    }
  return out;
}

bool complex_less(const Complex& lhs, const Complex& rhs) {
  if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
  return lhs.imag() < rhs.imag();
}

void sort_complex(CVector& values) { std::sort(values.begin(), values.end(), complex_less); }

double norm2(std::span<const Complex> x) {
  // Scaled accumulation keeps tiny residuals (1e-200 and below) representable.
  const double scale = max_abs(x);
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v / scale);
  return scale * std::sqrt(acc);
}

double max_abs(std::span<const Complex> x) {
  double best = 0.0;
  for (const auto& v : x) best = std::max(best, std::abs(v));
  return best;
}

std::vector<EigenPair> eig_dense(const CMatrix& a) {
  require_square(a, "eig_dense");
  require_finite(a, "eig_dense");
  const auto n = static_cast<Eigen::Index>(a.rows());
  if (n == 0) return {};

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(Eigen::MatrixXcd(as_eigen(a)), /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_dense: complex Schur iteration did not converge (n=" +
                           std::to_string(n) + ")");
  }

  std::vector<EigenPair> pairs(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    DenseVector v = solver.eigenvectors().col(j);
    const double nv = v.norm();
    if (nv > 0.0) v /= nv;
    pairs[static_cast<std::size_t>(j)] = {solver.eigenvalues()[j], to_vector(v)};
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& l, const EigenPair& r) {
    return complex_less(l.value, r.value);
  });
  return pairs;
}

CVector eigenvalues(const CMatrix& a) {
  require_square(a, "eigenvalues");
  require_finite(a, "eigenvalues");
  if (a.rows() == 0) return {};
  if (a.rows() == 1) return {a(0, 0)};

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(Eigen::MatrixXcd(as_eigen(a)), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigenvalues: complex Schur iteration did not converge (n=" +
                           std::to_string(a.rows()) + ")");
  }
  CVector values(solver.eigenvalues().data(),
                 solver.eigenvalues().data() + solver.eigenvalues().size());
  sort_complex(values);
  return values;
}

double smallest_singular_value(const CMatrix& a) {
  require_square(a, "smallest_singular_value");
  require_finite(a, "smallest_singular_value");
  if (a.rows() == 0) return 0.0;
  if (a.rows() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(as_eigen(a)));
  return svd.singularValues().minCoeff();
}

struct ShiftedSigmaMin::Schur {
  bool tridiagonal = false;
  CVector lower, diag, upper;  // tridiagonal input: the three diagonals
  Eigen::MatrixXcd t;          // otherwise: upper triangular Schur factor
};

namespace {

// Pivoted LU of a tridiagonal matrix (the layout of LAPACK's gttrf): U has
// two superdiagonals, `dl` holds the multipliers and `swapped[i]` records an
// interchange of rows i and i+1.
struct TridiagonalLU {
  CVector dl, d, du, du2;
  std::vector<char> swapped;

  bool factor(CVector lower, CVector diag, CVector upper) {
    dl = std::move(lower);
    d = std::move(diag);
    du = std::move(upper);
    const std::size_t n = d.size();
    du2.assign(n > 2 ? n - 2 : 0, Complex{});
    swapped.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] != Complex{}) {
          dl[i] /= d[i];
          d[i + 1] -= dl[i] * du[i];
        }
      } else {
        const Complex fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const Complex temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    return std::none_of(d.begin(), d.end(), [](const Complex& x) { return x == Complex{}; });
  }

  // b <- M^{-1} b
  void solve(Eigen::VectorXcd& b) const {
    const auto n = static_cast<Eigen::Index>(d.size());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const Complex temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      } else {
        b[i + 1] -= dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (Eigen::Index i = n - 3; i >= 0; --i) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }

  // b <- M^{-*} b
  void solve_adjoint(Eigen::VectorXcd& b) const {
    const auto n = static_cast<Eigen::Index>(d.size());
    b[0] /= std::conj(d[0]);
    if (n > 1) b[1] = (b[1] - std::conj(du[0]) * b[0]) / std::conj(d[1]);
    for (Eigen::Index i = 2; i < n; ++i) {
      b[i] = (b[i] - std::conj(du[i - 1]) * b[i - 1] - std::conj(du2[i - 2]) * b[i - 2]) / std::conj(d[i]);
    }
    for (Eigen::Index i = n - 2; i >= 0; --i) {
      if (swapped[i]) {
        const Complex temp = b[i + 1];
        b[i + 1] = b[i] - std::conj(dl[i]) * temp;
        b[i] = temp;
      } else {
        b[i] -= std::conj(dl[i]) * b[i + 1];
      }
    }
  }
};

bool is_tridiagonal(const CMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if ((i > j + 1 || j > i + 1) && a(i, j) != Complex{}) return false;
    }
  }
  return true;
}

// Largest eigenvalue of the Hermitian positive definite operator `apply` by
// Lanczos with full reorthogonalization. The largest Ritz value increases
// monotonically; it is checked every third step and iteration stops once it
// stagnates to 1e-13 relative, on breakdown, or when the Krylov space is
// exhausted.
template <typename Apply>
double lanczos_largest(Eigen::Index n, Apply&& apply) {
  Eigen::MatrixXcd q(n, n);
  std::vector<double> alpha, beta;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = Complex(1.0 + 0.5 * std::cos(1.3 * static_cast<double>(i)), std::sin(0.7 * static_cast<double>(i)));
  }
  v.normalize();
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    q.col(j) = v;
    Eigen::VectorXcd w = v;
    apply(w);
    alpha.push_back(v.dot(w).real());
    double b = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      const double before = b;
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).adjoint() * w);
      b = w.norm();
      if (b > 0.7 * before) break;
    }
    const bool last = b == 0.0 || j + 1 == n;
    if (j % 3 != 2 && !last) {
      beta.push_back(b);
      v = w / b;
      continue;
    }

    const auto size = static_cast<Eigen::Index>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(Eigen::Map<const Eigen::VectorXd>(alpha.data(), size),
                               Eigen::Map<const Eigen::VectorXd>(beta.data(), size - 1), Eigen::EigenvaluesOnly);
    const double previous = theta;
    theta = tri.eigenvalues()[size - 1];
    if (!(theta > 0.0) || !std::isfinite(theta) || last || b <= 1e-14 * theta) break;
    if (theta - previous <= 1e-13 * theta) break;
    beta.push_back(b);
    v = w / b;
  }
  return theta;
}

}  // namespace

ShiftedSigmaMin::ShiftedSigmaMin(const CMatrix& a) : n_(a.rows()) {
  require_square(a, "ShiftedSigmaMin");
  require_finite(a, "ShiftedSigmaMin");
  auto schur = std::make_shared<Schur>();
  if (n_ > 0 && is_tridiagonal(a)) {
    schur->tridiagonal = true;
    for (std::size_t i = 0; i < n_; ++i) {
      schur->diag.push_back(a(i, i));
      if (i + 1 < n_) {
        schur->lower.push_back(a(i + 1, i));
        schur->upper.push_back(a(i, i + 1));
      }
    }
  } else if (n_ > 0) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(as_eigen(a)), /*computeU=*/false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("ShiftedSigmaMin: Schur iteration did not converge");
    schur->t = solver.matrixT();
  }
  schur_ = std::move(schur);
}

double ShiftedSigmaMin::operator()(Complex lambda) const {
  const auto n = static_cast<Eigen::Index>(n_);
  if (n == 0) return 0.0;
  double theta = 0.0;
  if (schur_->tridiagonal) {
    CVector diag = schur_->diag;
    for (auto& x : diag) x -= lambda;
    TridiagonalLU lu;
    if (!lu.factor(schur_->lower, std::move(diag), schur_->upper)) return 0.0;
    theta = lanczos_largest(n, [&](Eigen::VectorXcd& x) {
      lu.solve_adjoint(x);
      lu.solve(x);
    });
  } else {
    Eigen::MatrixXcd m = schur_->t;
    m.diagonal().array() -= lambda;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (m(i, i) == Complex{}) return 0.0;
    }
    const auto upper = m.triangularView<Eigen::Upper>();
    theta = lanczos_largest(n, [&](Eigen::VectorXcd& x) {
      upper.adjoint().solveInPlace(x);
      upper.solveInPlace(x);
    });
  }
  if (!std::isfinite(theta)) return 0.0;
  return 1.0 / std::sqrt(theta);
}

SingularSubspace smallest_singular_subspace(const CMatrix& a, std::size_t count) {
  require_finite(a, "smallest_singular_subspace");
  if (count > a.cols()) throw InvalidInput("smallest_singular_subspace: count exceeds columns");
  SingularSubspace out;
  if (count == 0) return out;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(as_eigen(a)),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto cols = static_cast<Eigen::Index>(a.cols());
  // Singular values are sorted descending; columns beyond rank(A) when
  // rows < cols carry an implicit zero singular value.
  for (std::size_t t = 0; t < count; ++t) {
    const Eigen::Index col = cols - 1 - static_cast<Eigen::Index>(t);
    out.values.push_back(col < sv.size() ? sv[col] : 0.0);
    out.right_vectors.push_back(to_vector(svd.matrixV().col(col)));
  }
  return out;
}

CVector poly_roots(std::span<const Complex> coeffs) {
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == Complex{}) ++first;
  if (first == coeffs.size()) throw InvalidInput("poly_roots: zero polynomial");
  auto c = coeffs.subspan(first);

  // Trailing zero coefficients are exact roots at the origin.
  std::size_t zeros = 0;
  while (c.size() > 1 && c.back() == Complex{}) {
    c = c.first(c.size() - 1);
    ++zeros;
  }
  const std::size_t degree = c.size() - 1;

  CVector roots(zeros, Complex{});
  if (degree == 1) {
    roots.push_back(-c[1] / c[0]);
  } else if (degree > 1) {
    // Companion matrix of the monic polynomial.
    CMatrix companion(degree, degree);
    for (std::size_t j = 0; j < degree; ++j) companion(0, j) = -c[j + 1] / c[0];
    for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    const CVector eig = eigenvalues(companion);
    roots.insert(roots.end(), eig.begin(), eig.end());
  }
  sort_complex(roots);
  return roots;
}

LeastSquaresSolution solve_least_squares(const CMatrix& a, std::span<const Complex> b) {
  if (a.rows() == 0) throw InvalidInput("solve_least_squares: matrix has no rows");
  if (b.size() != a.rows()) throw InvalidInput("solve_least_squares: rhs length mismatch");
  require_finite(a, "solve_least_squares");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(as_eigen(a)),
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::Map<const DenseVector> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const DenseVector x = svd.solve(DenseVector(rhs));

  LeastSquaresSolution out;
  out.x = to_vector(x);
  const CVector ax = a.apply(out.x);
  CVector r(ax.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ax[i] - b[i];
  out.residual = norm2(r);
  return out;
}

}  // namespace skinspec
