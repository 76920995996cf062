#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "skinspec/cli/config.hpp"

namespace skinspec::cli {

using Written = std::vector<std::filesystem::path>;

/// sigma_det.csv (theta, branch, re, im) and sigma_det_summary.json.
Written cmd_sigma_det(const RunConfig& config);

/// region.csv (re, im, label, winding), region.svg, sigma_det.csv and
/// region_summary.json.
Written cmd_winding_region(const RunConfig& config);

/// sigma_min.csv, eigenvalues.csv, pseudospectrum.svg and
/// pseudospectrum_summary.json. Probes the capacitance matrix of [chain], or
/// the N x N finite section of [symbol].
Written cmd_pseudospectrum(const RunConfig& config);

/// modes.csv, mode_table.csv, report.json and modes.svg for [chain].
Written cmd_skin_report(const RunConfig& config);

/// Runs the acceptance suite and writes verify.json. Returns true when every
/// criterion passed.
bool cmd_verify(const RunConfig& config, std::ostream& log);

/// Dispatches on config.command and returns the process exit code
/// (0 ok, 1 verification failure).
int run_command(const RunConfig& config, std::ostream& log);

}  // namespace skinspec::cli
