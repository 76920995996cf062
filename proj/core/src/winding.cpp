#include "skinspec/winding.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "skinspec/error.hpp"

namespace skinspec {

namespace {

constexpr std::size_t kMaxArgumentSamples = std::size_t{1} << 18;

double root_guard(const RootPair& roots, double radius) {
  return std::min(std::abs(std::abs(roots.z1) - radius), std::abs(std::abs(roots.z2) - radius));
}

void require_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("winding: radius must be positive and finite");
  }
}

}  // namespace

WindingResult winding_at_radius(const SymbolCoeffs& s, Complex lambda, double radius) {
  require_radius(radius);
  const RootPair roots = quadratic_roots(s, lambda);
  const double guard = root_guard(roots, radius);
  if (guard <= guard_tolerance(radius)) {
    throw BoundaryError("winding_at_radius: lambda lies on the radius-r determinant curve", guard);
  }
  int inside = 0;
  if (std::abs(roots.z1) < radius) ++inside;
  if (std::abs(roots.z2) < radius) ++inside;
  return {inside - 1, WindingMethod::root_count, guard};
}

WindingResult winding_via_argument(const SymbolCoeffs& s, Complex lambda, double radius,
                                   std::size_t samples) {
  require_radius(radius);
  if (samples < 256) throw InvalidInput("winding_via_argument: at least 256 samples required");
  const RootPair roots = quadratic_roots(s, lambda);
  const double guard = root_guard(roots, radius);
  if (guard <= guard_tolerance(radius)) {
    throw BoundaryError("winding_via_argument: lambda lies on the radius-r determinant curve", guard);
  }

  const Complex A = roots.quad_a;
  const Complex B = roots.quad_b;
  const Complex g = roots.g;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  for (std::size_t n = samples; n <= kMaxArgumentSamples; n *= 2) {
    double total = 0.0;
    bool settled = true;
    Complex first{};
    Complex prev{};
    for (std::size_t m = 0; m <= n && settled; ++m) {
      Complex value;
      if (m == n) {
        value = first;
      } else {
        const Complex z = std::polar(radius, two_pi * static_cast<double>(m) / static_cast<double>(n));
        value = A * z + B / z + g;
      }
      if (m == 0) {
        first = value;
      } else {
        const double step = std::arg(value / prev);
        if (std::abs(step) > std::numbers::pi / 2) settled = false;
        total += step;
      }
      prev = value;
    }
    if (settled) {
      return {static_cast<int>(std::lround(total / two_pi)), WindingMethod::argument_sum, guard};
    }
  }
  throw NumericalError("winding_via_argument: phase steps exceed pi/2 even with " +
                       std::to_string(kMaxArgumentSamples) + " samples; more samples needed");
}

int eigencurve_winding_sum(const SymbolCoeffs& s, Complex lambda) {
  return winding_at_radius(s, lambda, 1.0).winding;
}

RegionLabel in_region_G(const SymbolCoeffs& s, Complex lambda) {
  const Complex A = quad_coeff_z(s);
  const Complex B = quad_coeff_inv_z(s);
  const double tol = guard_tolerance(1.0);

  if (A != Complex{} && B != Complex{}) {
    const RootPair roots = quadratic_roots(s, lambda);
    if (root_guard(roots, 1.0) <= tol) return {RegionKind::on_sigma_det, 0};
    int inside = (std::abs(roots.z1) < 1.0) + (std::abs(roots.z2) < 1.0);
    const int w = inside - 1;
    return w == 0 ? RegionLabel{RegionKind::outside, 0} : RegionLabel{RegionKind::inside, w};
  }

  // Degenerate regimes: det = A z + g (no pole), B/z + g (pole, one root) or g.
  const Complex g = g_lambda(s, lambda);
  if (A == Complex{} && B == Complex{}) {
    // Constant determinant: on sigma_det iff it vanishes (then everywhere).
    return std::abs(g) <= 1e-12 * (1.0 + s.scale()) ? RegionLabel{RegionKind::on_sigma_det, 0}
                                                   : RegionLabel{RegionKind::outside, 0};
  }
  if (g == Complex{}) {
    // Monomial determinant: winding +1 (A z) or -1 (B / z), never zero on the circle.
    const int w = (A != Complex{}) ? 1 : -1;
    return {RegionKind::inside, w};
  }
  const Complex root = (A != Complex{}) ? -g / A : -B / g;
  if (std::abs(std::abs(root) - 1.0) <= tol) return {RegionKind::on_sigma_det, 0};
  const int inside = std::abs(root) < 1.0 ? 1 : 0;
  const int w = (A != Complex{}) ? inside : inside - 1;
  return w == 0 ? RegionLabel{RegionKind::outside, 0} : RegionLabel{RegionKind::inside, w};
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::outside: return "outside";
    case RegionKind::inside: return "inside";
    case RegionKind::on_sigma_det: return "on_sigma_det";
  }
  return "unknown";
}

const char* to_string(WindingMethod method) {
  switch (method) {
    case WindingMethod::root_count: return "root_count";
    case WindingMethod::argument_sum: return "argument_sum";
  }
  return "unknown";
}

}  // namespace skinspec
