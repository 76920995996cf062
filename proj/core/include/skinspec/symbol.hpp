#pragma once

#include <cstddef>
#include <span>

#include "skinspec/linalg.hpp"

namespace skinspec {

/// Coefficients of a tridiagonal k-Toeplitz operator: the diagonal repeats
/// a[0..k), the superdiagonal b[0..k) and the subdiagonal c[0..k).
///
/// Row i (0-based) of T(f) reads  c[(i-1) mod k], a[i mod k], b[i mod k].
struct SymbolCoeffs {
  std::size_t k = 0;
  CVector a;
  CVector b;
  CVector c;

  /// Validates lengths (all equal, at least one) and finiteness.
  static SymbolCoeffs make(CVector a, CVector b, CVector c);

  /// Period-1 symbol a + b z^{-1} + c z.
  static SymbolCoeffs scalar(Complex a, Complex b, Complex c);

  void validate() const;

  Complex prod_b() const;
  Complex prod_c() const;
  bool prod_b_nonzero() const { return prod_b() != Complex{}; }
  bool prod_c_nonzero() const { return prod_c() != Complex{}; }

  /// Largest coefficient modulus, used to scale tolerances.
  double scale() const;

  friend bool operator==(const SymbolCoeffs&, const SymbolCoeffs&) = default;
};

/// Block form T(f) = [[A0, A-1, 0, ...], [A1, A0, A-1, ...], ...] with
/// f(z) = A-1 z^{-1} + A0 + A1 z.
struct SymbolBlocks {
  CMatrix coeff_inv_z;  // A-1: single entry b_k at (k-1, 0)
  CMatrix coeff_const;  // A0: tridiagonal core
  CMatrix coeff_z;      // A1: single entry c_k at (0, k-1)
};

SymbolBlocks build_blocks(const SymbolCoeffs& s);

/// f(z) as a k x k matrix. Corner terms are added onto A0, so for k = 1 and
/// k = 2 the blocks overlap and their contributions sum.
CMatrix eval_symbol(const SymbolCoeffs& s, Complex z);

/// det(f(z) - lambda) = A z + B z^{-1} + g(lambda) with
/// A = (-1)^{k+1} prod c, B = (-1)^{k+1} prod b.
Complex det_closed_form(const SymbolCoeffs& s, Complex z, Complex lambda);

/// g(lambda) = det(A0 - lambda) - b_k c_k p(lambda).
Complex g_lambda(const SymbolCoeffs& s, Complex lambda);

/// p(lambda): 0 for k = 1, 1 for k = 2, otherwise the determinant of the
/// principal submatrix of A0 - lambda on indices 2..k-1 (1-based).
Complex p_lambda(const SymbolCoeffs& s, Complex lambda);

Complex quad_coeff_z(const SymbolCoeffs& s);      // A
Complex quad_coeff_inv_z(const SymbolCoeffs& s);  // B

/// Coefficients of g as a polynomial in lambda, ascending powers.
CVector g_polynomial(const SymbolCoeffs& s);

enum class RootMultiplicity { distinct, double_root };

/// The two roots of A z^2 + g(lambda) z + B = 0.
struct RootPair {
  Complex z1;  // smaller modulus (ties broken by argument)
  Complex z2;
  RootMultiplicity multiplicity = RootMultiplicity::distinct;
  Complex quad_a;  // A
  Complex quad_b;  // B
  Complex g;       // g(lambda)

  bool is_double() const { return multiplicity == RootMultiplicity::double_root; }
};

/// |g^2 - 4AB| <= double_root_rtol * (|g|^2 + 4|AB| + 1) marks a double root.
inline constexpr double double_root_rtol = 1e-9;

/// Throws DegenerateSymbol when prod b or prod c vanishes.
RootPair quadratic_roots(const SymbolCoeffs& s, Complex lambda);

/// All lambda with g(lambda)^2 = 4AB (at most 2k values), sorted by (re, im).
CVector double_root_lambdas(const SymbolCoeffs& s);

/// N x N finite section A_N of T(f).
CMatrix finite_section(const SymbolCoeffs& s, std::size_t n);

/// Coefficients of the exchange-flipped section: for N divisible by k,
/// J A_N(s) J = A_N(mirrored(s)) where J reverses the index order.
SymbolCoeffs mirrored(const SymbolCoeffs& s);

}  // namespace skinspec
