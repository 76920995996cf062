#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skinspec/symbol.hpp"
#include "skinspec/winding.hpp"

namespace skinspec {

/// Eigenvalues of f(e^{i theta_m}) for theta_m = 2 pi m / samples.
/// values[m * k + j] is the j-th eigenvalue (sorted by (re, im)) at theta_m.
struct SigmaDetSample {
  std::size_t k = 0;
  std::vector<double> thetas;
  CVector values;

  std::size_t samples() const { return thetas.size(); }
  Complex value(std::size_t sample, std::size_t branch) const { return values[sample * k + branch]; }
  /// Smallest |value - lambda| over all sampled points.
  double distance_to(Complex lambda) const;
};

/// Samples the essential spectrum sigma_det(f). Requires samples >= 64.
SigmaDetSample sigma_det_sample(const SymbolCoeffs& s, std::size_t samples);

/// Same curves, read as the full spectrum of the Laurent operator L(f).
SigmaDetSample laurent_spectrum_sample(const SymbolCoeffs& s, std::size_t samples);

/// Eigenvalues of the leading (k-1) x (k-1) block of A0; empty for k = 1.
CVector sigma_B0(const SymbolCoeffs& s);

enum class SpectrumLabel { in_spectrum_essential, in_spectrum_winding, candidate_B0, not_in_spectrum };

struct SpectrumClassification {
  SpectrumLabel label = SpectrumLabel::not_in_spectrum;
  int winding = 0;
  CVector b0_eigs;
};

/// Distance within which lambda counts as an eigenvalue of B0.
inline constexpr double b0_tolerance = 1e-8;

/// Places lambda in the spectrum sandwich
///   sigma_det u sigma_wind  c  sigma(T(f))  c  sigma_det u sigma_wind u sigma(B0).
SpectrumClassification classify_spectrum_point(const SymbolCoeffs& s, Complex lambda);

enum class RecurrenceVerdict { ell2_decay, growth, inconclusive };

struct KernelRecurrence {
  CVector vector;  // u_1 = 1 unless rescaled to avoid overflow
  RecurrenceVerdict verdict = RecurrenceVerdict::inconclusive;
  double cell_ratio = 0.0;  // per-cell growth factor of the cell-max envelope
};

inline constexpr double recurrence_ratio_tol = 0.05;

/// Solves (T(f) - lambda) u = 0 row by row from u_1 = 1. The verdict compares
/// the cell-max envelope over the last third of the cells with the third
/// before it: ratio < 1 - tol decays, > 1 + tol grows.
/// Throws NumericalError when a superdiagonal coefficient vanishes.
KernelRecurrence kernel_forward_recurrence(const SymbolCoeffs& s, Complex lambda, std::size_t n,
                                           double ratio_tol = recurrence_ratio_tol);

/// Union over j of eig(f(omega_j)), omega_j = e^{2 pi i j / cells}, in j-major order.
CVector block_circulant_eigs(const SymbolCoeffs& s, std::size_t cells);

/// The (cells * k)-dimensional periodic truncation whose spectrum
/// block_circulant_eigs reproduces; wrap-around entries sum when they overlap.
CMatrix periodic_section(const SymbolCoeffs& s, std::size_t cells);

struct GridSpec {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  std::size_t re_points = 201;
  std::size_t im_points = 201;

  std::size_t size() const { return re_points * im_points; }
  /// Node (ix, iy); index = iy * re_points + ix.
  Complex node(std::size_t ix, std::size_t iy) const;
  Complex node(std::size_t index) const { return node(index % re_points, index / re_points); }
  void validate(std::size_t min_points = 2) const;
};

/// Bounding box of a sigma_det sample inflated by 25% per side (a degenerate
/// extent borrows the other axis' width), resolution x resolution nodes.
GridSpec default_grid(const SigmaDetSample& sample, std::size_t resolution = 201);

struct ClassifiedGrid {
  GridSpec spec;
  std::vector<RegionLabel> labels;  // empty when no symbol was classified
  std::vector<double> sigma_min;    // empty when no matrix was probed
};

/// Region labels (in_region_G) at every node; evaluation fans out across
/// `threads` workers with results independent of scheduling.
ClassifiedGrid classify_region_grid(const SymbolCoeffs& s, const GridSpec& spec, unsigned threads = 0);

/// sigma_min(A - lambda I) at every node. Requires at least 32 x 32 nodes.
ClassifiedGrid pseudospectrum_grid(const CMatrix& a, const GridSpec& spec, unsigned threads = 0);

/// Adds the sigma_min layer to an existing grid.
void add_sigma_min_layer(ClassifiedGrid& grid, const CMatrix& a, unsigned threads = 0);

struct EpsilonLevelSummary {
  double epsilon = 0.0;
  std::size_t nodes_below = 0;     // nodes with sigma_min <= epsilon
  std::size_t crossing_cells = 0;  // grid cells the epsilon contour passes through
};

struct GridSummary {
  std::size_t inside_nodes = 0;
  std::size_t outside_nodes = 0;
  std::size_t boundary_nodes = 0;
  std::size_t winding_negative = 0;
  std::size_t winding_positive = 0;
  std::vector<EpsilonLevelSummary> levels;
};

GridSummary summarize_grid(const ClassifiedGrid& grid, const std::vector<double>& epsilons);

const char* to_string(SpectrumLabel label);
const char* to_string(RecurrenceVerdict verdict);

}  // namespace skinspec
