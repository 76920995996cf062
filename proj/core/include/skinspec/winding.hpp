#pragma once

#include <cstddef>

#include "skinspec/symbol.hpp"

namespace skinspec {

enum class WindingMethod { root_count, argument_sum };

/// Winding number of det(f(z) - lambda) around 0 as z traverses the circle
/// |z| = r counterclockwise. For a tridiagonal symbol this is
/// #{roots inside} - 1, so it is always -1, 0 or +1. The Fredholm index of
/// T(f) - lambda is its negative.
struct WindingResult {
  int winding = 0;
  WindingMethod method = WindingMethod::root_count;
  double guard = 0.0;  // min over roots of | |z| - r |
};

/// Root moduli within this distance of r put lambda on the determinant curve.
inline double guard_tolerance(double radius) { return 1e-9 * (1.0 + radius); }

/// Throws BoundaryError when a root modulus is within guard_tolerance(r) of r,
/// DegenerateSymbol when prod b or prod c vanishes.
WindingResult winding_at_radius(const SymbolCoeffs& s, Complex lambda, double radius);

/// Argument-principle cross-check: accumulates the unwrapped phase of
/// det_closed_form on the circle. The sample count is doubled (up to 2^18)
/// until no step exceeds pi/2; NumericalError if it never settles.
WindingResult winding_via_argument(const SymbolCoeffs& s, Complex lambda, double radius,
                                   std::size_t samples = 256);

/// Total winding of the eigenvalue curves lambda_j(T) about lambda.
int eigencurve_winding_sum(const SymbolCoeffs& s, Complex lambda);

enum class RegionKind { outside, inside, on_sigma_det };

struct RegionLabel {
  RegionKind kind = RegionKind::outside;
  int winding = 0;  // nonzero exactly when kind == inside

  friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

/// Membership in the nonzero-winding region G. Never throws for valid
/// coefficients: degenerate symbols (prod b or prod c zero) are classified
/// from the remaining linear or constant determinant.
RegionLabel in_region_G(const SymbolCoeffs& s, Complex lambda);

const char* to_string(RegionKind kind);
const char* to_string(WindingMethod method);

}  // namespace skinspec
