#include "skinspec/cli/commands.hpp"

#include <algorithm>
#include <limits>

#include "skinspec/cli/svg.hpp"
#include "skinspec/cli/verify.hpp"
#include "skinspec/error.hpp"
#include "skinspec/io.hpp"

namespace skinspec::cli {

using nlohmann::json;

namespace {

std::filesystem::path emit(const RunConfig& config, const std::string& name, const std::string& text,
                           Written& written) {
  const std::filesystem::path path = config.out_dir / name;
  io::write_text_file(path, text);
  written.push_back(path);
  return path;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const ResonatorChain& require_chain(const RunConfig& config) {
  if (!config.chain) throw InvalidInput("config: this command needs a [chain] section");
  return *config.chain;
}

}  // namespace

Written cmd_sigma_det(const RunConfig& config) {
  const SymbolCoeffs s = config.effective_symbol();
  const SigmaDetSample sample = sigma_det_sample(s, config.samples);

  double min_abs = std::numeric_limits<double>::infinity();
  double re_lo = min_abs, re_hi = -min_abs, im_lo = min_abs, im_hi = -min_abs;
  for (const auto& v : sample.values) {
    min_abs = std::min(min_abs, std::abs(v));
    re_lo = std::min(re_lo, v.real());
    re_hi = std::max(re_hi, v.real());
    im_lo = std::min(im_lo, v.imag());
    im_hi = std::max(im_hi, v.imag());
  }
  Written written;
  emit(config, "sigma_det.csv", io::sigma_det_csv(sample), written);
  const json summary = {{"symbol", io::symbol_to_json(s)},
                        {"samples", sample.samples()},
                        {"branches", sample.k},
                        {"min_abs_value", min_abs},
                        {"re_range", {re_lo, re_hi}},
                        {"im_range", {im_lo, im_hi}}};
  emit(config, "sigma_det_summary.json", dump(summary), written);
  return written;
}

Written cmd_winding_region(const RunConfig& config) {
  const SymbolCoeffs s = config.effective_symbol();
  const SigmaDetSample sample = sigma_det_sample(s, config.samples);
  const ClassifiedGrid grid = classify_region_grid(s, config.grid_for(sample));

  Written written;
  const std::string region = io::region_csv(grid);
  const std::string curves = io::sigma_det_csv(sample);
  emit(config, "region.csv", region, written);
  emit(config, "sigma_det.csv", curves, written);
  emit(config, "region.svg", render_region_svg(io::parse_csv(region), io::parse_csv(curves)), written);
  json summary = io::grid_summary_json(grid.spec, summarize_grid(grid, {}));
  summary["symbol"] = io::symbol_to_json(s);
  emit(config, "region_summary.json", dump(summary), written);
  return written;
}

Written cmd_pseudospectrum(const RunConfig& config) {
  const SymbolCoeffs s = config.effective_symbol();
  const CMatrix a = config.chain ? capacitance_matrix(*config.chain) : finite_section(s, config.section_size);
  const SigmaDetSample sample = sigma_det_sample(s, config.samples);
  ClassifiedGrid grid = classify_region_grid(s, config.grid_for(sample));
  add_sigma_min_layer(grid, a);

  Written written;
  const std::string field = io::sigma_min_csv(grid);
  const std::string eigs = io::eigenvalues_csv(eigenvalues(a));
  emit(config, "sigma_min.csv", field, written);
  emit(config, "eigenvalues.csv", eigs, written);
  emit(config, "pseudospectrum.svg",
       render_pseudospectrum_svg(io::parse_csv(field), io::parse_csv(eigs), config.epsilons), written);
  json summary = io::grid_summary_json(grid.spec, summarize_grid(grid, config.epsilons));
  summary["matrix_size"] = a.rows();
  summary["symbol"] = io::symbol_to_json(s);
  emit(config, "pseudospectrum_summary.json", dump(summary), written);
  return written;
}

Written cmd_skin_report(const RunConfig& config) {
  const SkinEffectReport report = skin_effect_report(require_chain(config), config.samples);
  Written written;
  const std::string modes = io::modes_csv(report);
  emit(config, "modes.csv", modes, written);
  emit(config, "mode_table.csv", io::mode_table_csv(report), written);
  emit(config, "report.json", dump(io::report_json(report)), written);
  emit(config, "modes.svg", render_modes_svg(io::parse_csv(modes)), written);
  return written;
}

bool cmd_verify(const RunConfig& config, std::ostream& log) {
  const std::vector<CriterionResult> results = run_acceptance(config.seed, &log);
  json doc = results_to_json(results);
  doc["seed"] = config.seed;
  io::write_text_file(config.out_dir / "verify.json", dump(doc));
  return doc["passed"].get<bool>();
}

int run_command(const RunConfig& config, std::ostream& log) {
  Written written;
  switch (config.command) {
    case Command::sigma_det: written = cmd_sigma_det(config); break;
    case Command::winding_region: written = cmd_winding_region(config); break;
    case Command::pseudospectrum: written = cmd_pseudospectrum(config); break;
    case Command::skin_report: written = cmd_skin_report(config); break;
    case Command::verify: {
      const bool ok = cmd_verify(config, log);
      log << (ok ? "all criteria passed" : "verification failed") << '\n';
      return ok ? 0 : 1;
    }
  }
  for (const auto& path : written) log << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace skinspec::cli
