#include "skinspec/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <toml.hpp>

#include "skinspec/error.hpp"
#include "skinspec/io.hpp"

namespace skinspec::cli {

using nlohmann::json;

Command parse_command(const std::string& name) {
  if (name == "sigma-det") return Command::sigma_det;
  if (name == "winding-region") return Command::winding_region;
  if (name == "pseudospectrum") return Command::pseudospectrum;
  if (name == "skin-report") return Command::skin_report;
  if (name == "verify") return Command::verify;
  throw InvalidInput("unknown command \"" + name + "\"");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::sigma_det: return "sigma-det";
    case Command::winding_region: return "winding-region";
    case Command::pseudospectrum: return "pseudospectrum";
    case Command::skin_report: return "skin-report";
    case Command::verify: return "verify";
  }
  return "unknown";
}

void RunConfig::validate() {
  if (resolution < 32) throw InvalidInput("config: resolution must be at least 32");
  if (samples < 64) throw InvalidInput("config: samples must be at least 64");
  if (epsilons.empty()) throw InvalidInput("config: at least one epsilon level is required");
  for (const double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("config: epsilon levels must be positive");
  }
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
  if (bounds && !(bounds->re_max > bounds->re_min && bounds->im_max > bounds->im_min)) {
    throw InvalidInput("config: grid bounds need re_min < re_max and im_min < im_max");
  }
  if (section_size < 1) throw InvalidInput("config: N must be positive");
}

SymbolCoeffs RunConfig::effective_symbol() const {
  if (symbol) return *symbol;
  if (chain) return capacitance_to_ktoeplitz(*chain).coeffs;
  throw InvalidInput("config: a [symbol] or [chain] section is required");
}

GridSpec RunConfig::grid_for(const SigmaDetSample& sample) const {
  GridSpec spec = default_grid(sample, resolution);
  if (bounds) {
    spec.re_min = bounds->re_min;
    spec.re_max = bounds->re_max;
    spec.im_min = bounds->im_min;
    spec.im_max = bounds->im_max;
  }
  return spec;
}

namespace {

json toml_to_json(const toml::node& node) {
  if (const auto* table = node.as_table()) {
    json out = json::object();
    for (auto&& [key, value] : *table) out[std::string(key.str())] = toml_to_json(value);
    return out;
  }
  if (const auto* array = node.as_array()) {
    json out = json::array();
    for (auto&& value : *array) out.push_back(toml_to_json(value));
    return out;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  throw InvalidInput("config: date/time values are not supported");
}

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidInput(std::string("config: \"") + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

std::size_t count_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInput(std::string("config: \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

json load_config_document(const std::filesystem::path& path) {
  if (path.extension() == ".json") return io::read_json_file(path);
  const std::string text = io::read_text_file(path);
  try {
    return toml_to_json(toml::parse(text, path.string()));
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << path.string() << ':' << e.source().begin.line << ':' << e.source().begin.column << ": "
        << e.description();
    throw InvalidInput(msg.str());
  }
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("config: top level must be a table/object");
  RunConfig config;
  if (doc.contains("symbol")) config.symbol = io::symbol_from_json(doc.at("symbol"));
  if (doc.contains("chain")) config.chain = io::chain_from_json(doc.at("chain"));
  if (doc.contains("N")) config.section_size = count_at(doc, "N");
  if (doc.contains("samples")) config.samples = count_at(doc, "samples");
  if (doc.contains("seed")) config.seed = count_at(doc, "seed");
  if (doc.contains("epsilons")) {
    const json& eps = doc.at("epsilons");
    if (!eps.is_array()) throw InvalidInput("config: \"epsilons\" must be an array");
    config.epsilons.clear();
    for (const auto& e : eps) {
      if (!e.is_number()) throw InvalidInput("config: \"epsilons\" must hold numbers");
      config.epsilons.push_back(e.get<double>());
    }
  }
  if (doc.contains("grid")) {
    const json& grid = doc.at("grid");
    if (!grid.is_object()) throw InvalidInput("config: \"grid\" must be a table/object");
    if (grid.contains("resolution")) config.resolution = count_at(grid, "resolution");
    const bool any_bound = grid.contains("re_min") || grid.contains("re_max") || grid.contains("im_min") ||
                           grid.contains("im_max");
    if (any_bound) {
      config.bounds = GridBounds{number_at(grid, "re_min"), number_at(grid, "re_max"), number_at(grid, "im_min"),
                                 number_at(grid, "im_max")};
    }
  }
  config.validate();
  return config;
}

}  // namespace skinspec::cli
