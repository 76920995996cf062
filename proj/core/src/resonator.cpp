#include "skinspec/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/parallel.hpp"

namespace skinspec {

ResonatorChain ResonatorChain::periodic(std::size_t n, std::vector<double> period, double gamma) {
  if (period.empty()) throw InvalidInput("ResonatorChain: empty spacing period");
  if (n < 2) throw InvalidInput("ResonatorChain: at least two resonators required");
  ResonatorChain chain;
  chain.n = n;
  chain.k = period.size();
  chain.gamma = gamma;
  chain.spacings.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) chain.spacings[i] = period[i % chain.k];
  chain.lengths.assign(n, 1.0);
  chain.validate();
  return chain;
}

void ResonatorChain::validate() const {
  if (n < 2) throw InvalidInput("ResonatorChain: N must be at least 2");
  if (k < 1) throw InvalidInput("ResonatorChain: k must be at least 1");
  if (spacings.size() != n - 1) {
    throw InvalidInput("ResonatorChain: expected " + std::to_string(n - 1) + " spacings, got " +
                       std::to_string(spacings.size()));
  }
  if (lengths.size() != n) {
    throw InvalidInput("ResonatorChain: expected " + std::to_string(n) + " lengths, got " +
                       std::to_string(lengths.size()));
  }
  if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidInput("ResonatorChain: gamma must be finite and nonzero");
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    if (!(spacings[i] > 0.0) || !std::isfinite(spacings[i])) {
      throw InvalidInput("ResonatorChain: spacing " + std::to_string(i + 1) + " must be positive and finite");
    }
    if (i + k < spacings.size() && spacings[i + k] != spacings[i]) {
      throw InvalidInput("ResonatorChain: spacings are not " + std::to_string(k) + "-periodic at gap " +
                         std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) {
      throw InvalidInput("ResonatorChain: length " + std::to_string(i + 1) + " must be positive and finite");
    }
  }
}

bool ResonatorChain::uniform_lengths() const {
  return std::all_of(lengths.begin(), lengths.end(), [](double l) { return l == 1.0; });
}

CMatrix capacitance_matrix(const ResonatorChain& chain) {
  chain.validate();
  const std::size_t n = chain.n;
  const double g = chain.gamma;
  // 1-based accessors keep the formulas readable.
  auto s = [&](std::size_t i) { return chain.spacings[i - 1]; };
  auto l = [&](std::size_t i) { return chain.lengths[i - 1]; };
  auto minus = [&](double x) { return 1.0 - std::exp(-g * x); };
  auto plus = [&](double x) { return 1.0 - std::exp(g * x); };

  CMatrix c(n, n);
  c(0, 0) = (g / s(1)) * l(1) / minus(l(1));
  for (std::size_t i = 2; i < n; ++i) {
    c(i - 1, i - 1) = (g / s(i)) * l(i) / minus(l(i)) - (g / s(i - 1)) * l(i) / plus(l(i));
  }
  c(n - 1, n - 1) = -(g / s(n - 1)) * l(n) / plus(l(n));
  for (std::size_t i = 1; i < n; ++i) {
    c(i - 1, i) = -(g / s(i)) * l(i) / minus(l(i + 1));
    c(i, i - 1) = (g / s(i)) * l(i + 1) / plus(l(i));
  }
  return c;
}

CMatrix ktoeplitz_matrix(const KToeplitzSpec& spec, std::size_t n) {
  if (n < 1) throw InvalidInput("ktoeplitz_matrix: N must be positive");
  CMatrix m = finite_section(spec.coeffs, n);
  m(0, 0) += spec.a_pert;
  m(n - 1, n - 1) += spec.b_pert;
  return m;
}

KToeplitzSpec capacitance_to_ktoeplitz(const ResonatorChain& chain) {
  const CMatrix cap = capacitance_matrix(chain);
  const std::size_t n = chain.n;
  const std::size_t k = chain.k;
  if (n < 3 * k) {
    throw InvalidInput("capacitance_to_ktoeplitz: N = " + std::to_string(n) + " is below 3k = " +
                       std::to_string(3 * k));
  }

  CVector a(k), b(k), c(k);
  for (std::size_t r = k; r < 2 * k; ++r) {
    a[r - k] = cap(r, r);
    b[r - k] = cap(r, r + 1);
    c[(r - 1) % k] = cap(r, r - 1);
  }
  KToeplitzSpec spec{SymbolCoeffs::make(std::move(a), std::move(b), std::move(c)), {}, {}};
  spec.a_pert = cap(0, 0) - spec.coeffs.a[0];
  spec.b_pert = cap(n - 1, n - 1) - spec.coeffs.a[(n - 1) % k];

  const CMatrix rebuilt = ktoeplitz_matrix(spec, n);
  double mismatch = 0.0;
  for (std::size_t i = 0; i < cap.entries().size(); ++i) {
    mismatch = std::max(mismatch, std::abs(cap.entries()[i] - rebuilt.entries()[i]));
  }
  if (mismatch > 1e-10 * std::max(1.0, cap.max_abs())) {
    throw InvalidInput("capacitance_to_ktoeplitz: rebuild mismatch " + std::to_string(mismatch) +
                       " (capacitance matrix is not periodic; nonuniform lengths?)");
  }
  return spec;
}

SkinEffectReport skin_effect_report(const ResonatorChain& chain, std::size_t sigma_det_samples,
                                    unsigned threads) {
  SkinEffectReport report;
  report.chain = chain;
  report.spec = capacitance_to_ktoeplitz(chain);
  const SymbolCoeffs& s = report.spec.coeffs;
  report.sigma_det = sigma_det_sample(s, sigma_det_samples);
  report.b0_eigs = sigma_B0(s);

  std::vector<EigenPair> pairs = eig_dense(capacitance_matrix(chain));
  report.modes.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t j) {
    ModeReport& mode = report.modes[j];
    mode.lambda = pairs[j].value;
    mode.vector = std::move(pairs[j].vector);

    std::size_t peak = 0;
    for (std::size_t i = 1; i < mode.vector.size(); ++i) {
      if (std::abs(mode.vector[i]) > std::abs(mode.vector[peak])) peak = i;
    }
    const Complex pivot = mode.vector[peak];
    for (auto& x : mode.vector) x /= pivot;
    mode.argmax_site = peak + 1;

    mode.zero_mode = std::abs(mode.lambda) <= zero_mode_tolerance;
    mode.region = in_region_G(s, mode.lambda);
    mode.side = mode.region.winding > 0 ? Side::right : Side::left;
    mode.sigma_det_distance = report.sigma_det.distance_to(mode.lambda);
    if (mode.vector.size() >= 4 * s.k) mode.profile = decay_profile(mode.vector, s.k, mode.side);
  }, threads);

  for (const auto& mode : report.modes) {
    if (!mode.zero_mode) continue;
    ++report.zero_modes;
    double dev = 0.0;
    for (const auto& x : mode.vector) dev = std::max(dev, std::abs(x - mode.vector.front()));
    report.zero_mode_deviation = std::max(report.zero_mode_deviation, dev / max_abs(mode.vector));
  }
  return report;
}

}  // namespace skinspec
