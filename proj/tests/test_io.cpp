#include <doctest.h>

#include <cmath>
#include <limits>

#include "skinspec/error.hpp"
#include "skinspec/io.hpp"
#include "support.hpp"

using namespace skinspec;
using nlohmann::json;

TEST_SUITE_BEGIN("io");

TEST_CASE("number formatting round-trips") {
  for (const double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("complex and symbol JSON") {
  CHECK(io::complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(io::complex_from_json(json(3)) == Complex(3.0));
  CHECK_THROWS_AS(io::complex_from_json(json("x")), InvalidInput);
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2, 3]")), InvalidInput);
  CHECK(io::complex_to_json(Complex(0.25, 4.0)) == json::parse("[0.25, 4.0]"));

  const SymbolCoeffs s = SymbolCoeffs::make({Complex(0.5, 1.0), 2.0}, {1.0, 0.5}, {1.0, Complex(0.0, -3.0)});
  const json j = io::symbol_to_json(s);
  CHECK(j.at("k") == 2);
  CHECK(io::symbol_from_json(j) == s);
  CHECK(io::symbol_from_json(json::parse(j.dump())) == s);

  const SymbolCoeffs plain = io::symbol_from_json(json::parse(R"({"a": [0, 1], "b": [1, 0.5], "c": [1, 0.5]})"));
  CHECK(plain == testing::coburn1());
  CHECK_THROWS_AS(io::symbol_from_json(json::parse(R"({"k": 3, "a": [0], "b": [1], "c": [1]})")), InvalidInput);
  CHECK_THROWS_AS(io::symbol_from_json(json::parse(R"({"a": [0], "b": [1]})")), InvalidInput);
}

TEST_CASE("chain JSON") {
  const ResonatorChain from_period =
      io::chain_from_json(json::parse(R"({"N": 6, "k": 2, "s": [1, 2], "gamma": -0.5})"));
  CHECK(from_period.spacings == std::vector<double>{1, 2, 1, 2, 1});
  CHECK(from_period.gamma == -0.5);
  CHECK(from_period.lengths == std::vector<double>(6, 1.0));

  const ResonatorChain full = io::chain_from_json(json::parse(R"({"N": 4, "k": 1, "s": [2, 2, 2], "l": [1, 1, 1, 1]})"));
  CHECK(full.spacings == std::vector<double>{2, 2, 2});
  CHECK(full.gamma == 1.0);

  const ResonatorChain round = io::chain_from_json(io::chain_to_json(from_period));
  CHECK(round.spacings == from_period.spacings);
  CHECK(round.lengths == from_period.lengths);
  CHECK(round.gamma == from_period.gamma);
  CHECK(round.k == from_period.k);

  CHECK_THROWS_AS(io::chain_from_json(json::parse(R"({"N": 6, "k": 2, "s": [1, 2, 3]})")), InvalidInput);
  CHECK_THROWS_AS(io::chain_from_json(json::parse(R"({"N": 6, "k": 2})")), InvalidInput);
  CHECK_THROWS_AS(io::chain_from_json(json::parse(R"({"N": 6, "k": 2, "s": [1, 2], "gamma": "one"})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::chain_from_json(json::parse(R"({"N": 0, "k": 2, "s": [1, 2]})")), InvalidInput);
}

TEST_CASE("CSV writers and reader") {
  const SigmaDetSample sample = sigma_det_sample(testing::coburn1(), 64);
  const io::CsvTable curves = io::parse_csv(io::sigma_det_csv(sample));
  CHECK(curves.header == std::vector<std::string>{"theta", "branch", "re", "im"});
  REQUIRE(curves.rows.size() == 128);
  const std::size_t re = curves.column("re");
  const std::size_t branch = curves.column("branch");
  CHECK(std::stod(curves.rows[3][re]) == sample.value(1, 1).real());
  CHECK(curves.rows[3][branch] == "1");
  CHECK_THROWS_AS(curves.column("nope"), InvalidInput);

  const GridSpec grid{-1.0, 1.0, -1.0, 1.0, 4, 3};
  ClassifiedGrid g = classify_region_grid(SymbolCoeffs::scalar(0.0, 0.5, 2.0), grid);
  const io::CsvTable region = io::parse_csv(io::region_csv(g));
  CHECK(region.header == std::vector<std::string>{"re", "im", "label", "winding"});
  CHECK(region.rows.size() == 12);
  CHECK_THROWS_AS(io::sigma_min_csv(g), InvalidInput);

  g.sigma_min.assign(grid.size(), 0.125);
  const io::CsvTable field = io::parse_csv(io::sigma_min_csv(g));
  CHECK(field.rows.size() == 12);
  CHECK(field.rows[5][field.column("sigma_min")] == "0.125");

  const io::CsvTable eigs = io::parse_csv(io::eigenvalues_csv(CVector{Complex(1.0, -1.0), 2.0}));
  CHECK(eigs.header == std::vector<std::string>{"index", "re", "im"});
  CHECK(eigs.rows[1] == std::vector<std::string>{"1", "2", "0"});

  CHECK_THROWS_AS(io::parse_csv(""), InvalidInput);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), InvalidInput);
}

TEST_CASE("report serialization") {
  const SkinEffectReport report = skin_effect_report(ResonatorChain::periodic(12, {1.0, 2.0}), 256);
  const io::CsvTable table = io::parse_csv(io::mode_table_csv(report));
  CHECK(table.header ==
        std::vector<std::string>{"lambda_re", "lambda_im", "winding", "region", "argmax_site", "fitted_rho"});
  CHECK(table.rows.size() == 12);

  const io::CsvTable modes = io::parse_csv(io::modes_csv(report));
  CHECK(modes.rows.size() == 12 * 12);

  const json j = io::report_json(report);
  CHECK(j.at("modes").size() == 12);
  CHECK(j.at("zero_modes") == 1);
  CHECK(io::symbol_from_json(j.at("symbol")) == report.spec.coeffs);
}

TEST_CASE("files") {
  const testing::TempDir dir("io");
  const auto path = dir.path() / "nested" / "out.json";
  io::write_text_file(path, R"({"x": [1, 2]})");
  CHECK(io::read_text_file(path) == R"({"x": [1, 2]})");
  CHECK(io::read_json_file(path).at("x").size() == 2);

  io::write_text_file(dir.path() / "bad.json", "{");
  CHECK_THROWS_AS(io::read_json_file(dir.path() / "bad.json"), InvalidInput);
  CHECK_THROWS_AS(io::read_text_file(dir.path() / "missing.txt"), InvalidInput);
}

TEST_SUITE_END();
