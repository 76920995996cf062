#include "skinspec/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "skinspec/cli/oracles.hpp"
#include "skinspec/error.hpp"
#include "skinspec/modes.hpp"
#include "skinspec/resonator.hpp"
#include "skinspec/spectra.hpp"
#include "skinspec/symbol.hpp"
#include "skinspec/winding.hpp"

namespace skinspec::cli {

namespace {

using Rng = std::mt19937_64;

// Outcome of a criterion body before timing is attached.
struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string cplx(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Complex random_polar(Rng& rng, double rmin, double rmax) {
  return std::polar(uniform(rng, rmin, rmax), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

// |a| in [0, 2], |b|, |c| in [0.5, 2], uniform phases.
SymbolCoeffs random_symbol(Rng& rng, std::size_t k) {
  CVector a(k), b(k), c(k);
  for (std::size_t i = 0; i < k; ++i) {
    a[i] = random_polar(rng, 0.0, 2.0);
    b[i] = random_polar(rng, 0.5, 2.0);
    c[i] = random_polar(rng, 0.5, 2.0);
  }
  return SymbolCoeffs::make(std::move(a), std::move(b), std::move(c));
}

SymbolCoeffs coburn_example_1() { return SymbolCoeffs::make({0.0, 1.0}, {1.0, 0.5}, {1.0, 0.5}); }
SymbolCoeffs coburn_example_2() { return SymbolCoeffs::make({0.0, 1.0}, {1.0, 2.0}, {1.0, 2.0}); }

SymbolCoeffs chain_symbol(std::vector<double> period) {
  return capacitance_to_ktoeplitz(ResonatorChain::periodic(50, std::move(period))).coeffs;
}

// Per-cell decay rate of the modes at lambda: max 1/|z| when both roots lie
// outside the unit circle (left localization), max |z| when both lie inside.
double decay_rate(const RootPair& roots, int winding) {
  const double m1 = std::abs(roots.z1);
  const double m2 = std::abs(roots.z2);
  return winding < 0 ? 1.0 / std::min(m1, m2) : std::max(m1, m2);
}

// Uniform samples of the sigma_det bounding box lying in G with the decay
// rate in [rho_lo, rho_hi].
std::vector<Complex> sample_interior(const SymbolCoeffs& s, std::size_t count, double rho_lo, double rho_hi,
                                     Rng& rng) {
  const GridSpec box = default_grid(sigma_det_sample(s, 1024));
  std::vector<Complex> out;
  for (std::size_t attempt = 0; attempt < 200000 && out.size() < count; ++attempt) {
    const Complex lambda{uniform(rng, box.re_min, box.re_max), uniform(rng, box.im_min, box.im_max)};
    const RegionLabel label = in_region_G(s, lambda);
    if (label.kind != RegionKind::inside) continue;
    const double rho = decay_rate(quadratic_roots(s, lambda), label.winding);
    if (rho >= rho_lo && rho <= rho_hi) out.push_back(lambda);
  }
  if (out.size() < count) throw NumericalError("could not sample enough interior points of G");
  return out;
}

Verdict criterion_coburn(std::uint64_t) {
  Verdict v;
  const SymbolCoeffs e1 = coburn_example_1();
  const SymbolCoeffs e2 = coburn_example_2();
  for (const auto* s : {&e1, &e2}) {
    const char* name = s == &e1 ? "example 1" : "example 2";
    const int w = winding_at_radius(*s, 0.0, 1.0).winding;
    v.require(w == 0, std::string(name) + " winding " + std::to_string(w));
    const RootPair r = quadratic_roots(*s, 0.0);
    const double err = std::max(std::abs(r.z1 + 0.5), std::abs(r.z2 + 2.0));
    v.require(err <= 1e-10, std::string(name) + " roots " + cplx(r.z1) + ", " + cplx(r.z2));
    v.detail << name << " roots err " << sci(err) << "; ";
  }

  const KernelRecurrence g = kernel_forward_recurrence(e1, 0.0, 40);
  v.require(g.verdict == RecurrenceVerdict::growth, std::string("example 1 verdict ") + to_string(g.verdict));
  v.require(std::abs(g.cell_ratio - 2.0) <= 1e-9, "example 1 ratio " + sci(g.cell_ratio));
  v.detail << "example 1 ratio " << g.cell_ratio << "; ";

  const KernelRecurrence d = kernel_forward_recurrence(e2, 0.0, 40);
  double err = 0.0;
  for (std::size_t i = 0; i < d.vector.size(); ++i) {
    const double expected = i % 2 == 0 ? std::pow(-0.5, static_cast<double>(i / 2)) : 0.0;
    err = std::max(err, std::abs(d.vector[i] - expected));
  }
  v.require(err <= 1e-12, "example 2 kernel vector error " + sci(err));
  v.require(d.verdict == RecurrenceVerdict::ell2_decay, std::string("example 2 verdict ") + to_string(d.verdict));
  v.detail << "example 2 kernel err " << sci(err);
  return v;
}

Verdict criterion_determinant(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed);
  const double radii[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  std::size_t draws = 0;
  for (std::size_t k = 1; k <= 6; ++k) {
    for (int draw = 0; draw < 100; ++draw) {
      const SymbolCoeffs s = random_symbol(rng, k);
      const Complex z = std::polar(radii[uniform_count(rng, 0, 2)], uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const Complex lambda = random_polar(rng, 0.0, 3.0);
      const CMatrix m = eval_symbol(s, z).shifted(lambda);
      const double rel = std::abs(det_closed_form(s, z, lambda) - oracle::lu_determinant(m)) /
                         oracle::determinant_scale(m);
      worst = std::max(worst, rel);
      ++draws;
    }
  }
  v.require(worst <= 1e-10, "max scaled error " + sci(worst));
  v.detail << draws << " draws, max scaled error " << sci(worst);
  return v;
}

Verdict criterion_winding_agreement(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed + 1);
  std::size_t checked = 0, mismatches = 0;
  while (checked < 200) {
    const SymbolCoeffs s = random_symbol(rng, uniform_count(rng, 1, 4));
    const Complex lambda = random_polar(rng, 0.0, 4.0);
    const double r = std::exp(uniform(rng, std::log(0.3), std::log(3.0)));
    const RootPair roots = quadratic_roots(s, lambda);
    const double guard = std::min(std::abs(std::abs(roots.z1) - r), std::abs(std::abs(roots.z2) - r));
    if (guard <= 1e-3) continue;
    const int by_roots = winding_at_radius(s, lambda, r).winding;
    const int by_argument = winding_via_argument(s, lambda, r).winding;
    mismatches += by_roots != by_argument;
    ++checked;
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.detail << checked << " cases, " << mismatches << " mismatches";
  return v;
}

Verdict criterion_operator_eigenvector(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed + 2);
  std::size_t done = 0;
  double worst_row = 0.0, worst_rho = 0.0;
  while (done < 50) {
    const std::size_t k = uniform_count(rng, 1, 4);
    const SymbolCoeffs s = random_symbol(rng, k);
    const Complex z0 = random_polar(rng, 1.05, 3.0);
    const CVector eig = eigenvalues(eval_symbol(s, z0));
    const Complex lambda = eig[uniform_count(rng, 0, k - 1)];
    const RootPair roots = quadratic_roots(s, lambda);
    if (std::min(std::abs(roots.z1), std::abs(roots.z2)) <= 1.0 + 1e-6) continue;

    const OperatorEigenvector ev = operator_eigenvector(s, lambda);
    const std::size_t n = 40 * k;
    const CVector x = materialize(ev, n);
    const double tol = 1e-8 * std::max({1.0, s.scale(), std::abs(lambda)});
    double row_err = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Complex r = (s.a[i % k] - lambda) * x[i] + s.b[i % k] * x[i + 1];
      if (i > 0) r += s.c[(i - 1) % k] * x[i - 1];
      row_err = std::max(row_err, std::abs(r));
    }
    v.require(row_err <= tol, "row residual " + sci(row_err) + " at lambda " + cplx(lambda));
    worst_row = std::max(worst_row, row_err / tol * 1e-8);

    const double m1 = std::abs(ev.roots.z1), m2 = std::abs(ev.roots.z2);
    const bool loose = ev.chain == ChainKind::jordan || std::abs(m1 - m2) <= 0.1 * std::max(m1, m2);
    const double fitted = decay_profile(x, k).fitted_rho;
    const double rel = std::abs(fitted - ev.rho) / ev.rho;
    v.require(rel <= (loose ? 0.10 : 0.05),
              "fitted rho " + sci(fitted) + " vs " + sci(ev.rho) + " (k=" + std::to_string(k) + ")");
    worst_rho = std::max(worst_rho, rel);
    ++done;
  }
  v.detail << done << " symbols, max scaled row residual " << sci(worst_row) << ", max rho rel err "
           << sci(worst_rho);
  return v;
}

Verdict criterion_jordan(std::uint64_t) {
  Verdict v;
  const SymbolCoeffs s = SymbolCoeffs::scalar(0.0, 1.0, 0.25);
  const CVector dl = double_root_lambdas(s);
  v.require(dl.size() == 2 && std::abs(dl[0] + 1.0) <= 1e-12 && std::abs(dl[1] - 1.0) <= 1e-12,
            "double-root lambdas are not {-1, 1}");
  const RootPair roots = quadratic_roots(s, 1.0);
  v.require(roots.is_double() && std::abs(roots.z1 - 2.0) <= 1e-9, "lambda = 1 is not a double root at z = 2");

  std::vector<double> cells, logs;
  for (std::size_t n = 20; n <= 80; n += 10) {
    const PseudoMode mode = pseudo_eigenvector(s, 1.0, n);
    v.require(mode.chain == ChainKind::jordan, "chain not jordan at N=" + std::to_string(n));
    cells.push_back(static_cast<double>(n));
    logs.push_back(std::log(mode.residual / static_cast<double>(n)));
  }
  const double slope = oracle::fit_slope(cells, logs);
  const double target = std::log(0.5);
  const double rel = std::abs(slope - target) / std::abs(target);
  v.require(rel <= 0.10, "slope " + sci(slope));
  v.detail << "slope " << slope << " vs log(1/2) " << target << " (rel " << sci(rel) << ")";
  return v;
}

Verdict criterion_pseudospectrum_decay(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed + 3);
  const SymbolCoeffs s = chain_symbol({1.0, 2.0});
  for (const Complex lambda : sample_interior(s, 5, 0.6, 0.85, rng)) {
    const RegionLabel label = in_region_G(s, lambda);
    const double rho = decay_rate(quadratic_roots(s, lambda), label.winding);
    std::vector<double> cells, logs;
    for (std::size_t n = 20; n <= 100; n += 20) {
      cells.push_back(std::ceil(static_cast<double>(n) / 2.0));
      logs.push_back(std::log(smallest_singular_value(finite_section(s, n).shifted(lambda))));
    }
    const double slope = oracle::fit_slope(cells, logs);
    const double rel = std::abs(slope - std::log(rho)) / std::abs(std::log(rho));
    v.require(rel <= 0.15, "lambda " + cplx(lambda) + " slope " + sci(slope) + " vs log rho " + sci(std::log(rho)));
    v.detail << "lambda " << cplx(lambda) << " rel " << sci(rel) << "; ";
  }
  return v;
}

// Shared localization checks of the figure reproductions.
void check_localization(Verdict& v, const SkinEffectReport& report, const std::string& name) {
  const std::size_t site_limit = static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(report.chain.n)));
  v.require(report.zero_modes == 1, name + ": " + std::to_string(report.zero_modes) + " zero modes");
  v.require(report.zero_mode_deviation <= 1e-8, name + ": zero mode deviation " + sci(report.zero_mode_deviation));
  std::size_t max_site = 0;
  double max_rho = 0.0;
  for (const auto& mode : report.modes) {
    if (mode.zero_mode) continue;
    max_site = std::max(max_site, mode.argmax_site);
    max_rho = std::max(max_rho, mode.profile.fitted_rho);
    if (mode.argmax_site > site_limit || mode.profile.fitted_rho > 0.95) {
      v.require(false, name + ": mode " + cplx(mode.lambda) + " argmax site " + std::to_string(mode.argmax_site) +
                           ", fitted rho " + sci(mode.profile.fitted_rho));
    }
    if (mode.sigma_det_distance > 1e-3 && mode.region.winding == 0) {
      v.require(false, name + ": mode " + cplx(mode.lambda) + " off sigma_det (distance " +
                           sci(mode.sigma_det_distance) + ") with winding 0");
    }
  }
  v.detail << name << ": zero-mode deviation " << sci(report.zero_mode_deviation) << ", max argmax site "
           << max_site << ", max fitted rho " << sci(max_rho) << "; ";
}

Verdict criterion_figure2(std::uint64_t) {
  Verdict v;
  check_localization(v, skin_effect_report(ResonatorChain::periodic(50, {1.0, 2.0})), "dimer (1,2)");
  return v;
}

Verdict criterion_figure3(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed + 4);
  for (const auto& period : {std::vector<double>{1.0, 2.0, 3.0}, std::vector<double>{2.0, 3.0, 4.0}}) {
    const ResonatorChain chain = ResonatorChain::periodic(50, period);
    const std::string name = "trimer (" + std::to_string(int(period[0])) + "," + std::to_string(int(period[1])) +
                             "," + std::to_string(int(period[2])) + ")";
    const SkinEffectReport report = skin_effect_report(chain);
    check_localization(v, report, name);

    const CMatrix cap = capacitance_matrix(chain);
    double worst = 0.0;
    for (const Complex lambda : sample_interior(report.spec.coeffs, 20, 0.0, 0.85, rng)) {
      worst = std::max(worst, smallest_singular_value(cap.shifted(lambda)));
    }
    v.require(worst < 1e-2, name + ": sigma_min " + sci(worst) + " at a sampled interior point");
    v.detail << name << " max sigma_min over 20 interior points " << sci(worst) << "; ";
  }
  return v;
}

Verdict criterion_circulant(std::uint64_t) {
  Verdict v;
  const SymbolCoeffs dimer = chain_symbol({1.0, 2.0});
  const SymbolCoeffs e1 = coburn_example_1();
  for (const auto* s : {&e1, &dimer}) {
    const char* name = s == &e1 ? "example 1" : "dimer";
    const CVector circ = block_circulant_eigs(*s, 64);
    const CVector dense = eigenvalues(periodic_section(*s, 64));
    const double match = oracle::greedy_match_distance(circ, dense);
    v.require(match <= 1e-8, std::string(name) + ": circulant/dense mismatch " + sci(match));
    const SigmaDetSample sample = sigma_det_sample(*s, 4096);
    double dist = 0.0;
    for (const auto& z : circ) dist = std::max(dist, sample.distance_to(z));
    v.require(dist <= 1e-6, std::string(name) + ": distance to sigma_det " + sci(dist));
    v.detail << name << " match " << sci(match) << ", curve distance " << sci(dist) << "; ";
  }
  return v;
}

Verdict criterion_capacitance(std::uint64_t seed) {
  Verdict v;
  Rng rng(seed + 5);
  const double gammas[] = {1.0, -1.0, 0.5, -0.5};
  double worst_rows = 0.0, worst_rebuild = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t k = uniform_count(rng, 1, 4);
    std::vector<double> period(k);
    for (auto& s : period) s = uniform(rng, 0.5, 3.0);
    const ResonatorChain chain =
        ResonatorChain::periodic(k * uniform_count(rng, 3, 15), period, gammas[uniform_count(rng, 0, 3)]);
    const CMatrix cap = capacitance_matrix(chain);
    const CVector ones(chain.n, 1.0);
    const double rows = max_abs(cap.apply(ones)) / cap.inf_norm();
    const CMatrix rebuilt = ktoeplitz_matrix(capacitance_to_ktoeplitz(chain), chain.n);
    double rebuild = 0.0;
    for (std::size_t i = 0; i < cap.entries().size(); ++i) {
      rebuild = std::max(rebuild, std::abs(cap.entries()[i] - rebuilt.entries()[i]));
    }
    worst_rows = std::max(worst_rows, rows);
    worst_rebuild = std::max(worst_rebuild, rebuild);
  }
  v.require(worst_rows <= 1e-12, "relative row sum " + sci(worst_rows));
  v.require(worst_rebuild <= 1e-12, "rebuild error " + sci(worst_rebuild));
  v.detail << "20 chains, max |C1|/|C| " << sci(worst_rows) << ", max rebuild error " << sci(worst_rebuild);
  return v;
}

struct CriterionDef {
  const char* name;
  double budget_seconds;
  Verdict (*body)(std::uint64_t);
};

const CriterionDef kCriteria[] = {
    {"Coburn golden tests", 1.0, criterion_coburn},
    {"determinant oracle", 5.0, criterion_determinant},
    {"winding method agreement", 10.0, criterion_winding_agreement},
    {"operator eigenvector rows", 30.0, criterion_operator_eigenvector},
    {"Jordan chain decay", 5.0, criterion_jordan},
    {"pseudospectrum decay", 120.0, criterion_pseudospectrum_decay},
    {"Figure 2 reproduction", 30.0, criterion_figure2},
    {"Figure 3 reproduction", 120.0, criterion_figure3},
    {"Laurent/circulant oracle", 10.0, criterion_circulant},
    {"capacitance structure", 5.0, criterion_capacitance},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(std::size(kCriteria))) {
    throw InvalidInput("unknown acceptance criterion " + std::to_string(id));
  }
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = def.name;
  result.budget_seconds = def.budget_seconds;

  const auto start = std::chrono::steady_clock::now();
  try {
    Verdict v = def.body(seed);
    result.passed = v.passed;
    result.detail = v.detail.str();
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.seconds > result.budget_seconds) {
    result.passed = false;
    result.detail += " over runtime budget";
  }
  while (!result.detail.empty() && (result.detail.back() == ' ' || result.detail.back() == ';')) {
    result.detail.pop_back();
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(kCriteria)); ++id) {
    out.push_back(run_criterion(id, seed));
    if (progress) *progress << format_line(out.back()) << std::endl;
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s [%2d] %s (%.2f s of %.0f s): ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.budget_seconds);
  return head + r.detail;
}

nlohmann::json results_to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json criteria = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"detail", r.detail},
                        {"budget_seconds", r.budget_seconds}});
  }
  return {{"passed", all}, {"criteria", criteria}};
}

}  // namespace skinspec::cli
