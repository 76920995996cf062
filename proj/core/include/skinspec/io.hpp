#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skinspec/resonator.hpp"
#include "skinspec/spectra.hpp"
#include "skinspec/symbol.hpp"

namespace skinspec::io {

/// Shortest round-trip decimal form ("%.17g"); "nan"/"inf" for non-finite.
std::string format_double(double x);

/// Complex scalars are [re, im] pairs; a bare number is read as real.
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(Complex z);

/// {"k": int, "a": [[re, im], ...], "b": [...], "c": [...]}; "k" is optional
/// but must match the sequence lengths when present.
SymbolCoeffs symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const SymbolCoeffs& s);

/// {"N": int, "k": int, "s": [...], "l": [...], "gamma": float}. "s" holds
/// either one period (k values) or all N - 1 spacings; "l" defaults to ones
/// and "gamma" to 1.
ResonatorChain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const ResonatorChain& chain);

/// Parses a JSON file; throws InvalidInput with the path on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// theta,branch,re,im
std::string sigma_det_csv(const SigmaDetSample& sample);
/// re,im,label,winding
std::string region_csv(const ClassifiedGrid& grid);
/// re,im,label,winding,sigma_min (label/winding empty when unclassified)
std::string sigma_min_csv(const ClassifiedGrid& grid);
/// index,re,im
std::string eigenvalues_csv(std::span<const Complex> values);

nlohmann::json grid_summary_json(const GridSpec& spec, const GridSummary& summary);

/// mode,lambda_re,lambda_im,zero_mode,site,abs
std::string modes_csv(const SkinEffectReport& report);
/// lambda_re,lambda_im,winding,region,argmax_site,fitted_rho
std::string mode_table_csv(const SkinEffectReport& report);
nlohmann::json report_json(const SkinEffectReport& report);

/// Minimal CSV reader for files written above: header row plus rows of
/// comma-separated fields (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws InvalidInput when missing.
  std::size_t column(const std::string& name) const;
};
CsvTable parse_csv(const std::string& text);

}  // namespace skinspec::io
