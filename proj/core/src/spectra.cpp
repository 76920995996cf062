#include "skinspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/parallel.hpp"

namespace skinspec {

double SigmaDetSample::distance_to(Complex lambda) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : values) best = std::min(best, std::abs(v - lambda));
  return best;
}

SigmaDetSample sigma_det_sample(const SymbolCoeffs& s, std::size_t samples) {
  if (samples < 64) throw InvalidInput("sigma_det_sample: at least 64 samples required");
  s.validate();
  SigmaDetSample out;
  out.k = s.k;
  out.thetas.resize(samples);
  out.values.reserve(samples * s.k);
  for (std::size_t m = 0; m < samples; ++m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples);
    out.thetas[m] = theta;
    const CVector eig = eigenvalues(eval_symbol(s, std::polar(1.0, theta)));
    out.values.insert(out.values.end(), eig.begin(), eig.end());
  }
  return out;
}

SigmaDetSample laurent_spectrum_sample(const SymbolCoeffs& s, std::size_t samples) {
  return sigma_det_sample(s, samples);
}

CVector sigma_B0(const SymbolCoeffs& s) {
  s.validate();
  if (s.k == 1) return {};
  return eigenvalues(build_blocks(s).coeff_const.leading_block(s.k - 1));
}

SpectrumClassification classify_spectrum_point(const SymbolCoeffs& s, Complex lambda) {
  SpectrumClassification out;
  out.b0_eigs = sigma_B0(s);
  const RootPair roots = quadratic_roots(s, lambda);
  const double guard =
      std::min(std::abs(std::abs(roots.z1) - 1.0), std::abs(std::abs(roots.z2) - 1.0));
  if (guard <= guard_tolerance(1.0)) {
    out.label = SpectrumLabel::in_spectrum_essential;
    return out;
  }
  out.winding = (std::abs(roots.z1) < 1.0) + (std::abs(roots.z2) < 1.0) - 1;
  if (out.winding != 0) {
    out.label = SpectrumLabel::in_spectrum_winding;
    return out;
  }
  const bool near_b0 = std::any_of(out.b0_eigs.begin(), out.b0_eigs.end(), [&](const Complex& mu) {
    return std::abs(mu - lambda) <= b0_tolerance;
  });
  out.label = near_b0 ? SpectrumLabel::candidate_B0 : SpectrumLabel::not_in_spectrum;
  return out;
}

KernelRecurrence kernel_forward_recurrence(const SymbolCoeffs& s, Complex lambda, std::size_t n,
                                           double ratio_tol) {
  s.validate();
  if (n == 0) throw InvalidInput("kernel_forward_recurrence: n must be positive");
  const std::size_t k = s.k;

  KernelRecurrence out;
  CVector& u = out.vector;
  u.assign(n, Complex{});
  u[0] = 1.0;
  // Row m (0-based): c[(m-1)%k] u[m-1] + (a[m%k] - lambda) u[m] + b[m%k] u[m+1] = 0.
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const Complex bm = s.b[m % k];
    if (bm == Complex{}) {
      throw NumericalError("kernel_forward_recurrence: superdiagonal coefficient b[" +
                           std::to_string(m % k) + "] vanishes");
    }
    Complex rhs = (lambda - s.a[m % k]) * u[m];
    if (m > 0) rhs -= s.c[(m - 1) % k] * u[m - 1];
    u[m + 1] = rhs / bm;
    if (std::abs(u[m + 1]) > 1e150) {
      for (std::size_t i = 0; i <= m + 1; ++i) u[i] *= 1e-150;
    }
  }

  const std::size_t cells = (n + k - 1) / k;
  if (cells < 2) return out;
  auto cell_max = [&](std::size_t cell) {
    double best = 0.0;
    for (std::size_t i = cell * k; i < std::min(n, (cell + 1) * k); ++i) best = std::max(best, std::abs(u[i]));
    return best;
  };
  const std::size_t window = std::max<std::size_t>(1, cells / 3);
  double last = 0.0;
  double before = 0.0;
  for (std::size_t c = cells - window; c < cells; ++c) last = std::max(last, cell_max(c));
  for (std::size_t c = cells - 2 * window; c < cells - window; ++c) before = std::max(before, cell_max(c));
  if (before == 0.0) return out;

  out.cell_ratio = std::pow(last / before, 1.0 / static_cast<double>(window));
  if (out.cell_ratio < 1.0 - ratio_tol) {
    out.verdict = RecurrenceVerdict::ell2_decay;
  } else if (out.cell_ratio > 1.0 + ratio_tol) {
    out.verdict = RecurrenceVerdict::growth;
  }
  return out;
}

CVector block_circulant_eigs(const SymbolCoeffs& s, std::size_t cells) {
  if (cells < 2) throw InvalidInput("block_circulant_eigs: at least 2 cells required");
  CVector out;
  out.reserve(cells * s.k);
  for (std::size_t j = 0; j < cells; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(cells);
    const CVector eig = eigenvalues(eval_symbol(s, std::polar(1.0, theta)));
    out.insert(out.end(), eig.begin(), eig.end());
  }
  return out;
}

CMatrix periodic_section(const SymbolCoeffs& s, std::size_t cells) {
  if (cells < 1) throw InvalidInput("periodic_section: at least 1 cell required");
  const std::size_t n = cells * s.k;
  CMatrix m = finite_section(s, n);
  m(n - 1, 0) += s.b[s.k - 1];
  m(0, n - 1) += s.c[s.k - 1];
  return m;
}

Complex GridSpec::node(std::size_t ix, std::size_t iy) const {
  const double tx = re_points > 1 ? static_cast<double>(ix) / static_cast<double>(re_points - 1) : 0.0;
  const double ty = im_points > 1 ? static_cast<double>(iy) / static_cast<double>(im_points - 1) : 0.0;
  return {re_min + tx * (re_max - re_min), im_min + ty * (im_max - im_min)};
}

void GridSpec::validate(std::size_t min_points) const {
  if (re_points < min_points || im_points < min_points) {
    throw InvalidInput("grid: resolution must be at least " + std::to_string(min_points) + " per axis");
  }
  if (!(re_max > re_min) || !(im_max > im_min) || !std::isfinite(re_max - re_min) ||
      !std::isfinite(im_max - im_min)) {
    throw InvalidInput("grid: bounds must satisfy min < max and be finite");
  }
}

GridSpec default_grid(const SigmaDetSample& sample, std::size_t resolution) {
  if (sample.values.empty()) throw InvalidInput("default_grid: empty sigma_det sample");
  double re_lo = std::numeric_limits<double>::infinity();
  double re_hi = -re_lo;
  double im_lo = re_lo;
  double im_hi = -re_lo;
  for (const auto& v : sample.values) {
    re_lo = std::min(re_lo, v.real());
    re_hi = std::max(re_hi, v.real());
    im_lo = std::min(im_lo, v.imag());
    im_hi = std::max(im_hi, v.imag());
  }
  double width = re_hi - re_lo;
  double height = im_hi - im_lo;
  const double floor = 1e-12 * (1.0 + std::max(std::abs(re_hi), std::abs(im_hi)));
  if (width <= floor && height <= floor) width = height = 1.0;
  if (width <= floor) width = height;
  if (height <= floor) height = width;
  const double re_mid = 0.5 * (re_lo + re_hi);
  const double im_mid = 0.5 * (im_lo + im_hi);

  GridSpec spec;
  spec.re_min = re_mid - 0.75 * width;
  spec.re_max = re_mid + 0.75 * width;
  spec.im_min = im_mid - 0.75 * height;
  spec.im_max = im_mid + 0.75 * height;
  spec.re_points = spec.im_points = resolution;
  return spec;
}

ClassifiedGrid classify_region_grid(const SymbolCoeffs& s, const GridSpec& spec, unsigned threads) {
  spec.validate();
  s.validate();
  ClassifiedGrid grid;
  grid.spec = spec;
  grid.labels.resize(spec.size());
  parallel_for(spec.size(), [&](std::size_t i) { grid.labels[i] = in_region_G(s, spec.node(i)); }, threads);
  return grid;
}

void add_sigma_min_layer(ClassifiedGrid& grid, const CMatrix& a, unsigned threads) {
  if (!a.is_square()) throw InvalidInput("pseudospectrum_grid: matrix must be square");
  grid.spec.validate(32);
  grid.sigma_min.assign(grid.spec.size(), 0.0);
  const ShiftedSigmaMin sigma_min(a);
  parallel_for(grid.spec.size(), [&](std::size_t i) { grid.sigma_min[i] = sigma_min(grid.spec.node(i)); }, threads);
}

ClassifiedGrid pseudospectrum_grid(const CMatrix& a, const GridSpec& spec, unsigned threads) {
  ClassifiedGrid grid;
  grid.spec = spec;
  add_sigma_min_layer(grid, a, threads);
  return grid;
}

GridSummary summarize_grid(const ClassifiedGrid& grid, const std::vector<double>& epsilons) {
  GridSummary out;
  for (const auto& label : grid.labels) {
    switch (label.kind) {
      case RegionKind::inside: ++out.inside_nodes; break;
      case RegionKind::outside: ++out.outside_nodes; break;
      case RegionKind::on_sigma_det: ++out.boundary_nodes; break;
    }
    if (label.winding < 0) ++out.winding_negative;
    if (label.winding > 0) ++out.winding_positive;
  }
  if (grid.sigma_min.empty()) return out;

  const std::size_t nx = grid.spec.re_points;
  const std::size_t ny = grid.spec.im_points;
  for (const double eps : epsilons) {
    EpsilonLevelSummary level{eps, 0, 0};
    for (const double v : grid.sigma_min) level.nodes_below += (v <= eps);
    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
      for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
        const double corners[4] = {grid.sigma_min[iy * nx + ix], grid.sigma_min[iy * nx + ix + 1],
                                   grid.sigma_min[(iy + 1) * nx + ix], grid.sigma_min[(iy + 1) * nx + ix + 1]};
        const int below = (corners[0] <= eps) + (corners[1] <= eps) + (corners[2] <= eps) + (corners[3] <= eps);
        level.crossing_cells += (below > 0 && below < 4);
      }
    }
    out.levels.push_back(level);
  }
  return out;
}

const char* to_string(SpectrumLabel label) {
  switch (label) {
    case SpectrumLabel::in_spectrum_essential: return "in_spectrum_essential";
    case SpectrumLabel::in_spectrum_winding: return "in_spectrum_winding";
    case SpectrumLabel::candidate_B0: return "candidate_B0";
    case SpectrumLabel::not_in_spectrum: return "not_in_spectrum";
  }
  return "unknown";
}

const char* to_string(RecurrenceVerdict verdict) {
  switch (verdict) {
    case RecurrenceVerdict::ell2_decay: return "ell2_decay";
    case RecurrenceVerdict::growth: return "growth";
    case RecurrenceVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace skinspec
