#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skinspec/modes.hpp"
#include "skinspec/spectra.hpp"
#include "skinspec/symbol.hpp"
#include "skinspec/winding.hpp"

namespace skinspec {

/// A chain of N resonators with k-periodic spacings and an imaginary gauge
/// potential gamma.
struct ResonatorChain {
  std::size_t n = 0;
  std::size_t k = 1;
  std::vector<double> spacings;  // length N - 1, spacings[i + k] == spacings[i]
  std::vector<double> lengths;   // length N
  double gamma = 1.0;

  /// Repeats one period of spacings over N - 1 gaps; unit resonator lengths.
  static ResonatorChain periodic(std::size_t n, std::vector<double> period, double gamma = 1.0);

  /// Throws InvalidInput on wrong lengths, non-positive or non-finite
  /// spacings/lengths, broken periodicity, or gamma == 0.
  void validate() const;

  bool uniform_lengths() const;
};

/// The N x N gauge capacitance matrix (real, tridiagonal, non-symmetric for
/// gamma != 0). Row sums vanish when all lengths are equal to one.
CMatrix capacitance_matrix(const ResonatorChain& chain);

/// Tridiagonal k-Toeplitz reading of a capacitance matrix: the finite section
/// of `coeffs` plus a_pert at (1,1) and b_pert at (N,N).
struct KToeplitzSpec {
  SymbolCoeffs coeffs;
  Complex a_pert;
  Complex b_pert;
};

/// Reads a, b, c from rows k+1..2k and the two corner perturbations.
/// Requires N >= 3k. Throws InvalidInput if the rebuilt matrix differs from
/// the capacitance matrix by more than 1e-10 (relative to its largest entry).
KToeplitzSpec capacitance_to_ktoeplitz(const ResonatorChain& chain);

/// The perturbed N x N k-Toeplitz matrix described by `spec`.
CMatrix ktoeplitz_matrix(const KToeplitzSpec& spec, std::size_t n);

struct ModeReport {
  Complex lambda;
  CVector vector;  // max-normalized eigenvector
  RegionLabel region;
  Side side = Side::left;
  DecayProfile profile;
  std::size_t argmax_site = 0;  // 1-based
  double sigma_det_distance = 0.0;
  bool zero_mode = false;  // |lambda| <= zero_mode_tolerance
};

inline constexpr double zero_mode_tolerance = 1e-8;

struct SkinEffectReport {
  ResonatorChain chain;
  KToeplitzSpec spec;
  std::vector<ModeReport> modes;  // sorted by (re, im) of lambda
  SigmaDetSample sigma_det;
  CVector b0_eigs;
  std::size_t zero_modes = 0;
  /// max_i |x_i - x_1| / max_i |x_i| for the zero mode (0 when absent).
  double zero_mode_deviation = 0.0;
};

/// Eigen-decomposes the capacitance matrix and classifies every mode against
/// the extracted symbol. Decay profiles read from the right end for modes
/// with positive winding, from the left otherwise.
SkinEffectReport skin_effect_report(const ResonatorChain& chain, std::size_t sigma_det_samples = 4096,
                                    unsigned threads = 0);

}  // namespace skinspec
