#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skinspec/cli/commands.hpp"
#include "skinspec/cli/config.hpp"
#include "skinspec/error.hpp"

namespace {

constexpr int kExitInput = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skinspec: spectra, pseudospectra and skin-effect modes of tridiagonal k-Toeplitz operators"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::size_t> samples;
  std::optional<std::size_t> resolution;
  std::optional<std::uint64_t> seed;

  app.add_option("command", command, "sigma-det | winding-region | pseudospectrum | skin-report | verify")
      ->required()
      ->check(CLI::IsMember({"sigma-det", "winding-region", "pseudospectrum", "skin-report", "verify"}));
  app.add_option("--config", config_path, "TOML or JSON run configuration");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--samples", samples, "sigma_det sample count (>= 64)");
  app.add_option("--resolution", resolution, "grid nodes per axis (>= 32)");
  app.add_option("--seed", seed, "seed for randomized acceptance sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    skinspec::cli::RunConfig config;
    if (!config_path.empty()) {
      config = skinspec::cli::config_from_json(skinspec::cli::load_config_document(config_path));
      config.config_path = config_path;
    }
    config.command = skinspec::cli::parse_command(command);
    config.out_dir = out_dir;
    if (samples) config.samples = *samples;
    if (resolution) config.resolution = *resolution;
    if (seed) config.seed = *seed;
    config.validate();
    if (config.command != skinspec::cli::Command::verify && config_path.empty()) {
      throw skinspec::InvalidInput("--config is required for " + command);
    }
    return skinspec::cli::run_command(config, std::cout);
  } catch (const skinspec::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
