#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "skinspec/cli/commands.hpp"
#include "skinspec/cli/config.hpp"
#include "skinspec/cli/oracles.hpp"
#include "skinspec/cli/svg.hpp"
#include "skinspec/error.hpp"
#include "skinspec/io.hpp"
#include "support.hpp"

using namespace skinspec;
using namespace skinspec::cli;
using nlohmann::json;

namespace {

RunConfig load(const testing::TempDir& dir, const std::string& name, const std::string& text) {
  const auto path = dir.path() / name;
  io::write_text_file(path, text);
  return config_from_json(load_config_document(path));
}

// Runs a command into a fresh directory and returns the bytes of every file
// it wrote, keyed by file name.
std::map<std::string, std::string> run_into(RunConfig config, const std::filesystem::path& out) {
  config.out_dir = out;
  std::ostringstream log;
  std::map<std::string, std::string> files;
  Written written;
  switch (config.command) {
    case Command::sigma_det: written = cmd_sigma_det(config); break;
    case Command::winding_region: written = cmd_winding_region(config); break;
    case Command::pseudospectrum: written = cmd_pseudospectrum(config); break;
    case Command::skin_report: written = cmd_skin_report(config); break;
    case Command::verify: break;
  }
  for (const auto& path : written) files[path.filename().string()] = testing::slurp(path);
  return files;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("command names") {
  for (const Command c :
       {Command::sigma_det, Command::winding_region, Command::pseudospectrum, Command::skin_report, Command::verify}) {
    CHECK(parse_command(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_command("spectrum"), InvalidInput);
}

TEST_CASE("config documents") {
  const testing::TempDir dir("config");

  SUBCASE("TOML with a chain") {
    const RunConfig c = load(dir, "chain.toml", R"(
epsilons = [1e-5, 1e-2, 1e-2]
samples = 512
seed = 7

[chain]
N = 20
k = 2
s = [1.0, 2.0]

[grid]
resolution = 64
)");
    REQUIRE(c.chain);
    CHECK_FALSE(c.symbol);
    CHECK(c.chain->n == 20);
    CHECK(c.samples == 512);
    CHECK(c.seed == 7);
    CHECK(c.resolution == 64);
    CHECK(c.epsilons == std::vector<double>{1e-2, 1e-5});
    CHECK_FALSE(c.bounds);
    CHECK(c.effective_symbol() == capacitance_to_ktoeplitz(*c.chain).coeffs);
  }
  SUBCASE("TOML with a symbol and explicit bounds") {
    const RunConfig c = load(dir, "symbol.toml", R"(
N = 30
[symbol]
a = [0.0, [1.0, 0.5]]
b = [1.0, 0.5]
c = [1.0, 0.5]
[grid]
re_min = -1.0
re_max = 2.0
im_min = -0.5
im_max = 0.5
)");
    REQUIRE(c.symbol);
    CHECK(c.symbol->a[1] == Complex(1.0, 0.5));
    CHECK(c.section_size == 30);
    REQUIRE(c.bounds);
    const GridSpec grid = c.grid_for(sigma_det_sample(*c.symbol, 64));
    CHECK(grid.re_min == -1.0);
    CHECK(grid.im_max == 0.5);
    CHECK(grid.re_points == 201);
  }
  SUBCASE("JSON equivalent") {
    const RunConfig c = load(dir, "symbol.json", R"({"symbol": {"a": [0, 1], "b": [1, 0.5], "c": [1, 0.5]}})");
    CHECK(*c.symbol == testing::coburn1());
  }
  SUBCASE("the shipped configs load") {
    for (const char* name :
         {"dimer.toml", "trimer_123.toml", "trimer_234.toml", "hatano_nelson.toml", "coburn_example1.json"}) {
      CAPTURE(name);
      CHECK_NOTHROW(config_from_json(load_config_document(std::filesystem::path(SKINSPEC_CONFIG_DIR) / name)));
    }
  }
  SUBCASE("invalid documents") {
    CHECK_THROWS_AS(load(dir, "a.toml", "samples = 10\n[symbol]\na=[0]\nb=[1]\nc=[1]\n"), InvalidInput);
    CHECK_THROWS_AS(load(dir, "b.toml", "epsilons = [-1.0]\n"), InvalidInput);
    CHECK_THROWS_AS(load(dir, "c.toml", "[grid]\nresolution = 8\n"), InvalidInput);
    CHECK_THROWS_AS(load(dir, "d.toml", "[grid]\nre_min = 1.0\nre_max = 0.0\nim_min = 0.0\nim_max = 1.0\n"),
                    InvalidInput);
    CHECK_THROWS_AS(load(dir, "e.toml", "[grid]\nre_min = 1.0\n"), InvalidInput);
    CHECK_THROWS_AS(load(dir, "f.toml", "this is = = not toml"), InvalidInput);
    CHECK_THROWS_AS(load(dir, "g.json", "[1, 2]"), InvalidInput);
    CHECK_THROWS_AS(load_config_document(dir.path() / "missing.toml"), InvalidInput);
    const RunConfig empty = load(dir, "h.toml", "seed = 3\n");
    CHECK_THROWS_AS(empty.effective_symbol(), InvalidInput);
  }
}

TEST_CASE("marching squares") {
  // Distance from the origin; the level-1 contour is the unit circle.
  std::vector<double> xs, ys, values;
  const std::size_t n = 41;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(-2.0 + 4.0 * static_cast<double>(i) / (n - 1));
    ys.push_back(xs.back());
  }
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) values.push_back(std::hypot(xs[ix], ys[iy]));
  }
  const std::vector<Segment> segments = marching_squares(values, xs, ys, 1.0);
  REQUIRE_FALSE(segments.empty());
  double length = 0.0;
  for (const Segment& s : segments) {
    CHECK(std::hypot(s.x0, s.y0) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::hypot(s.x1, s.y1) == doctest::Approx(1.0).epsilon(0.01));
    length += std::hypot(s.x1 - s.x0, s.y1 - s.y0);
  }
  CHECK(length == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.01));

  CHECK(marching_squares(values, xs, ys, 10.0).empty());

  // Saddle: f = x * y crosses zero along both axes.
  const std::vector<double> saddle{1.0, -1.0, -1.0, 1.0};
  const std::vector<double> axis{-1.0, 1.0};
  CHECK(marching_squares(saddle, axis, axis, 0.0).size() == 2);
}

TEST_CASE("oracle helpers") {
  CHECK(std::abs(oracle::lu_determinant(CMatrix{{0.0, 2.0}, {3.0, 1.0}}) - Complex(-6.0)) < 1e-15);
  CHECK(std::abs(oracle::lu_determinant(CMatrix{{1.0, 2.0}, {2.0, 4.0}})) < 1e-15);
  CHECK(oracle::determinant_scale(CMatrix{{1.0, 1.0}, {3.0, -1.0}}) == doctest::Approx(8.0));
  CHECK(oracle::determinant_scale(CMatrix{{0.1, 0.1}, {3.0, -1.0}}) == 1.0);

  const CVector a{0.0, 1.0, Complex(0.0, 1.0)};
  const CVector b{Complex(0.0, 1.1), 1.0, 0.05};
  CHECK(oracle::greedy_match_distance(a, b) == doctest::Approx(0.1));
  CHECK(std::isinf(oracle::greedy_match_distance(a, CVector{0.0})));

  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  CHECK(oracle::fit_slope(x, y) == doctest::Approx(2.0));
}

TEST_CASE("commands are deterministic and their SVGs follow from the CSVs") {
  const testing::TempDir dir("commands");
  RunConfig symbol_run = load(dir, "hn.toml", R"(
N = 24
samples = 128
[symbol]
a = [0.0]
b = [1.5]
c = [0.5]
[grid]
resolution = 33
)");
  RunConfig chain_run = load(dir, "dimer.toml", R"(
samples = 128
[chain]
N = 16
k = 2
s = [1.0, 2.0]
[grid]
resolution = 33
)");

  for (const Command command : {Command::sigma_det, Command::winding_region, Command::pseudospectrum}) {
    for (RunConfig* config : {&symbol_run, &chain_run}) {
      CAPTURE(to_string(command));
      config->command = command;
      const auto first = run_into(*config, dir.path() / "first");
      const auto second = run_into(*config, dir.path() / "second");
      CHECK(first == second);
      CHECK_FALSE(first.empty());
    }
  }
  chain_run.command = Command::skin_report;
  const auto first = run_into(chain_run, dir.path() / "first");
  const auto second = run_into(chain_run, dir.path() / "second");
  CHECK(first == second);

  // Regenerate every figure from the CSV files on disk.
  symbol_run.command = Command::winding_region;
  auto files = run_into(symbol_run, dir.path() / "region");
  CHECK(files.at("region.svg") ==
        render_region_svg(io::parse_csv(files.at("region.csv")), io::parse_csv(files.at("sigma_det.csv"))));

  symbol_run.command = Command::pseudospectrum;
  files = run_into(symbol_run, dir.path() / "pseudo");
  CHECK(files.at("pseudospectrum.svg") == render_pseudospectrum_svg(io::parse_csv(files.at("sigma_min.csv")),
                                                                   io::parse_csv(files.at("eigenvalues.csv")),
                                                                   symbol_run.epsilons));
  const json summary = json::parse(files.at("pseudospectrum_summary.json"));
  CHECK(summary.at("matrix_size") == 24);

  files = run_into(chain_run, dir.path() / "modes");
  CHECK(files.at("modes.svg") == render_modes_svg(io::parse_csv(files.at("modes.csv"))));
  CHECK(files.at("modes.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("run_command dispatch") {
  const testing::TempDir dir("dispatch");
  RunConfig config = load(dir, "hn.toml", "samples = 128\n[symbol]\na = [0.0]\nb = [1.5]\nc = [0.5]\n");
  config.command = Command::sigma_det;
  config.out_dir = dir.path() / "out";
  std::ostringstream log;
  CHECK(run_command(config, log) == 0);
  CHECK(log.str().find("sigma_det.csv") != std::string::npos);
  CHECK(std::filesystem::exists(config.out_dir / "sigma_det_summary.json"));

  config.command = Command::skin_report;
  CHECK_THROWS_AS(run_command(config, log), InvalidInput);
}

TEST_SUITE_END();
