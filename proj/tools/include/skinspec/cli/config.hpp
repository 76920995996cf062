#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skinspec/resonator.hpp"
#include "skinspec/spectra.hpp"
#include "skinspec/symbol.hpp"

namespace skinspec::cli {

enum class Command { sigma_det, winding_region, pseudospectrum, skin_report, verify };

/// Parses "sigma-det", "winding-region", ...; throws InvalidInput otherwise.
Command parse_command(const std::string& name);
const char* to_string(Command command);

/// Explicit grid bounds; the resolution lives in RunConfig.
struct GridBounds {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};

struct RunConfig {
  Command command = Command::verify;
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";

  std::optional<SymbolCoeffs> symbol;
  std::optional<ResonatorChain> chain;
  /// Size of the finite section probed when a symbol (not a chain) drives
  /// the pseudospectrum command.
  std::size_t section_size = 50;

  std::optional<GridBounds> bounds;
  std::size_t resolution = 201;
  std::vector<double> epsilons{1e-2, 1e-5};
  std::size_t samples = 4096;
  std::uint64_t seed = 20240229;

  /// Checks resolution >= 32, epsilons positive (and sorts them descending),
  /// samples >= 64, bounds ordered.
  void validate();

  /// Symbol given directly, or extracted from the chain.
  SymbolCoeffs effective_symbol() const;

  /// The grid to evaluate: explicit bounds, or the inflated bounding box of
  /// the sigma_det sample.
  GridSpec grid_for(const SigmaDetSample& sample) const;
};

/// Reads a TOML document (JSON when the extension is .json) into JSON.
nlohmann::json load_config_document(const std::filesystem::path& path);

/// Builds a RunConfig from a parsed document. Recognized keys: "symbol",
/// "chain", "grid" {re_min, re_max, im_min, im_max, resolution}, "epsilons",
/// "samples", "seed", "N".
RunConfig config_from_json(const nlohmann::json& doc);

}  // namespace skinspec::cli
