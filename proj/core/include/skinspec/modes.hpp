#pragma once

#include <cstddef>
#include <span>

#include "skinspec/symbol.hpp"

namespace skinspec {

enum class ChainKind { independent, jordan };
enum class Side { left, right };

/// Lazily represented l^2 eigenvector of T(f) at lambda, built from the two
/// roots z1, z2 of det(f(z) - lambda) (both outside the unit circle).
///
/// Cell m (0-based) of the vector is
///   independent: alpha1 z1^{-m} v1 + alpha2 z2^{-m} v2
///   jordan:      alpha1 z1^{-m} v1 + alpha2 (z1^{-m} v2 + m z1^{-(m-1)} v1)
/// Every block row from the second on holds by construction; (alpha1, alpha2)
/// cancels the scalar defect of the first row.
struct OperatorEigenvector {
  Complex lambda;
  RootPair roots;
  CVector v1;
  CVector v2;
  Complex alpha1;
  Complex alpha2;
  ChainKind chain = ChainKind::independent;
  double rho = 0.0;  // max_i 1 / |z_i| < 1

  std::size_t k() const { return v1.size(); }
};

/// Requires prod b, prod c nonzero and eigencurve_winding_sum(s, lambda) < 0;
/// throws InvalidInput for winding >= 0 and BoundaryError on sigma_det.
OperatorEigenvector operator_eigenvector(const SymbolCoeffs& s, Complex lambda);

/// Minimum-norm v2 solving
///   (A1 + (A0 - lambda) z1^{-1} + A-1 z1^{-2}) v2 = -((A0 - lambda) + 2 A-1 z1^{-1}) v1.
/// Throws NumericalError when the residual exceeds 1e-8 * scale.
CVector jordan_chain_vector(const SymbolCoeffs& s, Complex lambda, Complex z1,
                            std::span<const Complex> v1);

/// First n entries of the eigenvector, normalized to max modulus 1.
CVector materialize(const OperatorEigenvector& ev, std::size_t n);

/// Unnormalized cell values (k entries) of cell m, for row checks.
CVector eigenvector_cell(const OperatorEigenvector& ev, std::size_t m);

struct PseudoMode {
  CVector vector;  // max-normalized
  Side side = Side::left;
  ChainKind chain = ChainKind::independent;
  double rho = 0.0;
  /// ||(A_N - lambda) v|| / ||v|| of the exact construction: the defect of
  /// the last row (first row for right-localized modes) divided by ||v||.
  double residual = 0.0;
  /// The same quantity evaluated in floating point; it bottoms out near
  /// machine precision once the true defect falls below it.
  double computed_residual = 0.0;
  /// residual / (cells^j rho^(cells-1)) with j = 1 for jordan chains, else 0.
  double bound_constant = 0.0;
};

/// Truncation of the operator construction to N entries. Negative winding
/// gives a left-localized vector; positive winding is built for the mirrored
/// coefficients and flipped (side = right, requires N % k == 0). Throws
/// InvalidInput for winding 0.
PseudoMode pseudo_eigenvector(const SymbolCoeffs& s, Complex lambda, std::size_t n);

/// ||(A - lambda) v|| / ||v||; throws InvalidInput for v = 0.
double residual(const CMatrix& a, Complex lambda, std::span<const Complex> v);

struct DecayProfile {
  std::vector<double> cell_max;  // per-cell max modulus, max-normalized
  double fitted_rho = 0.0;
  double fitted_logC = 0.0;
  std::size_t window_begin = 0;  // fitted cell range [begin, end), 0-based
  std::size_t window_end = 0;
  Side side = Side::left;
};

/// Least-squares fit of log cell_max[m] = logC + m log rho over the cells
/// between the first and the last (zero cells skipped). side = right reads
/// the vector from its far end. Requires v.size() >= 4k and v != 0.
DecayProfile decay_profile(std::span<const Complex> v, std::size_t k, Side side = Side::left);

const char* to_string(ChainKind chain);
const char* to_string(Side side);

}  // namespace skinspec
