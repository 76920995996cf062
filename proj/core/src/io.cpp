#include "skinspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "skinspec/error.hpp"

namespace skinspec::io {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidInput("expected a complex value as [re, im] or a number, got " + j.dump());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

namespace {

CVector complex_sequence(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput(std::string("symbol: missing array \"") + key + "\"");
  }
  CVector out;
  for (const auto& item : j.at(key)) out.push_back(complex_from_json(item));
  return out;
}

std::vector<double> real_sequence(const json& j, const char* key) {
  if (!j.at(key).is_array()) throw InvalidInput(std::string("chain: \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& item : j.at(key)) {
    if (!item.is_number()) throw InvalidInput(std::string("chain: \"") + key + "\" must hold numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

json complex_array(std::span<const Complex> values) {
  json out = json::array();
  for (const auto& z : values) out.push_back(complex_to_json(z));
  return out;
}

std::size_t positive_count(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InvalidInput(std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

SymbolCoeffs symbol_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("symbol: expected a JSON object");
  SymbolCoeffs s = SymbolCoeffs::make(complex_sequence(j, "a"), complex_sequence(j, "b"), complex_sequence(j, "c"));
  if (j.contains("k") && positive_count(j, "k") != s.k) {
    throw InvalidInput("symbol: \"k\" does not match the coefficient lengths");
  }
  return s;
}

json symbol_to_json(const SymbolCoeffs& s) {
  return {{"k", s.k}, {"a", complex_array(s.a)}, {"b", complex_array(s.b)}, {"c", complex_array(s.c)}};
}

ResonatorChain chain_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("chain: expected a JSON object");
  const std::size_t n = positive_count(j, "N");
  const std::size_t k = positive_count(j, "k");
  if (!j.contains("s")) throw InvalidInput("chain: missing \"s\"");
  const std::vector<double> s = real_sequence(j, "s");
  double gamma = 1.0;
  if (j.contains("gamma")) {
    if (!j.at("gamma").is_number()) throw InvalidInput("chain: \"gamma\" must be a number");
    gamma = j.at("gamma").get<double>();
  }

  ResonatorChain chain;
  if (s.size() == k) {
    chain = ResonatorChain::periodic(n, s, gamma);
  } else if (s.size() + 1 == n) {
    chain.n = n;
    chain.k = k;
    chain.spacings = s;
    chain.lengths.assign(n, 1.0);
    chain.gamma = gamma;
  } else {
    throw InvalidInput("chain: \"s\" must hold k or N - 1 values");
  }
  if (j.contains("l")) chain.lengths = real_sequence(j, "l");
  chain.validate();
  return chain;
}

json chain_to_json(const ResonatorChain& chain) {
  return {{"N", chain.n}, {"k", chain.k}, {"s", chain.spacings}, {"l", chain.lengths}, {"gamma", chain.gamma}};
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

std::string sigma_det_csv(const SigmaDetSample& sample) {
  std::string out = "theta,branch,re,im\n";
  for (std::size_t m = 0; m < sample.samples(); ++m) {
    for (std::size_t j = 0; j < sample.k; ++j) {
      const Complex v = sample.value(m, j);
      out += format_double(sample.thetas[m]) + ',' + std::to_string(j) + ',' + format_double(v.real()) + ',' +
             format_double(v.imag()) + '\n';
    }
  }
  return out;
}

std::string region_csv(const ClassifiedGrid& grid) {
  if (grid.labels.size() != grid.spec.size()) throw InvalidInput("region_csv: grid has no region labels");
  std::string out = "re,im,label,winding\n";
  for (std::size_t i = 0; i < grid.spec.size(); ++i) {
    const Complex z = grid.spec.node(i);
    out += format_double(z.real()) + ',' + format_double(z.imag()) + ',' + to_string(grid.labels[i].kind) + ',' +
           std::to_string(grid.labels[i].winding) + '\n';
  }
  return out;
}

std::string sigma_min_csv(const ClassifiedGrid& grid) {
  if (grid.sigma_min.size() != grid.spec.size()) throw InvalidInput("sigma_min_csv: grid has no sigma_min layer");
  const bool labelled = grid.labels.size() == grid.spec.size();
  std::string out = "re,im,label,winding,sigma_min\n";
  for (std::size_t i = 0; i < grid.spec.size(); ++i) {
    const Complex z = grid.spec.node(i);
    out += format_double(z.real()) + ',' + format_double(z.imag()) + ',';
    if (labelled) out += std::string(to_string(grid.labels[i].kind)) + ',' + std::to_string(grid.labels[i].winding);
    else out += ',';
    out += ',' + format_double(grid.sigma_min[i]) + '\n';
  }
  return out;
}

std::string eigenvalues_csv(std::span<const Complex> values) {
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(values[i].real()) + ',' + format_double(values[i].imag()) + '\n';
  }
  return out;
}

json grid_summary_json(const GridSpec& spec, const GridSummary& summary) {
  json levels = json::array();
  for (const auto& level : summary.levels) {
    levels.push_back({{"epsilon", level.epsilon},
                      {"nodes_below", level.nodes_below},
                      {"crossing_cells", level.crossing_cells}});
  }
  return {{"grid",
           {{"re_min", spec.re_min},
            {"re_max", spec.re_max},
            {"im_min", spec.im_min},
            {"im_max", spec.im_max},
            {"re_points", spec.re_points},
            {"im_points", spec.im_points}}},
          {"inside_nodes", summary.inside_nodes},
          {"outside_nodes", summary.outside_nodes},
          {"boundary_nodes", summary.boundary_nodes},
          {"winding_negative", summary.winding_negative},
          {"winding_positive", summary.winding_positive},
          {"levels", levels}};
}

std::string modes_csv(const SkinEffectReport& report) {
  std::string out = "mode,lambda_re,lambda_im,zero_mode,site,abs\n";
  for (std::size_t j = 0; j < report.modes.size(); ++j) {
    const ModeReport& mode = report.modes[j];
    const std::string prefix = std::to_string(j) + ',' + format_double(mode.lambda.real()) + ',' +
                               format_double(mode.lambda.imag()) + ',' + (mode.zero_mode ? "1" : "0") + ',';
    for (std::size_t i = 0; i < mode.vector.size(); ++i) {
      out += prefix + std::to_string(i + 1) + ',' + format_double(std::abs(mode.vector[i])) + '\n';
    }
  }
  return out;
}

std::string mode_table_csv(const SkinEffectReport& report) {
  std::string out = "lambda_re,lambda_im,winding,region,argmax_site,fitted_rho\n";
  for (const auto& mode : report.modes) {
    out += format_double(mode.lambda.real()) + ',' + format_double(mode.lambda.imag()) + ',' +
           std::to_string(mode.region.winding) + ',' + to_string(mode.region.kind) + ',' +
           std::to_string(mode.argmax_site) + ',' + format_double(mode.profile.fitted_rho) + '\n';
  }
  return out;
}

json report_json(const SkinEffectReport& report) {
  json modes = json::array();
  for (const auto& mode : report.modes) {
    modes.push_back({{"lambda", complex_to_json(mode.lambda)},
                     {"winding", mode.region.winding},
                     {"region", to_string(mode.region.kind)},
                     {"side", to_string(mode.side)},
                     {"argmax_site", mode.argmax_site},
                     {"fitted_rho", mode.profile.fitted_rho},
                     {"fitted_logC", mode.profile.fitted_logC},
                     {"sigma_det_distance", mode.sigma_det_distance},
                     {"zero_mode", mode.zero_mode}});
  }
  return {{"chain", chain_to_json(report.chain)},
          {"symbol", symbol_to_json(report.spec.coeffs)},
          {"a_pert", complex_to_json(report.spec.a_pert)},
          {"b_pert", complex_to_json(report.spec.b_pert)},
          {"b0_eigenvalues", complex_array(report.b0_eigs)},
          {"sigma_det_samples", report.sigma_det.samples()},
          {"zero_modes", report.zero_modes},
          {"zero_mode_deviation", report.zero_mode_deviation},
          {"modes", modes}};
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidInput("csv: missing column \"" + name + "\"");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& row) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = row.find(',', start);
      fields.push_back(row.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };
  if (!std::getline(in, line)) throw InvalidInput("csv: empty input");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split(line));
    if (table.rows.back().size() != table.header.size()) throw InvalidInput("csv: ragged row");
  }
  return table;
}

}  // namespace skinspec::io
