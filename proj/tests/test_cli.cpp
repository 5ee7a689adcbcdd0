#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dfsl/cli.hpp"
#include "dfsl/eigensolve.hpp"

using dfsl::Command;
using dfsl::ConfigError;
using dfsl::Form;

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("dfsl-cli-" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("parse_config accepts the reference solve document") {
  const dfsl::RunSpec spec = dfsl::parse_config(
      R"({"form":"gl","mu":0.5,"grid":{"n":16},"p":1.0,"q":0.0,"r":1.0})",
      Command::Solve);
  CHECK(spec.form == Form::GL);
  CHECK(spec.mu == 0.5);
  CHECK(spec.grid->n == 16);
  CHECK(spec.h == 1.0);
  CHECK(spec.seed == 1);
  CHECK(std::get<double>(spec.coeffs.p) == 1.0);
  CHECK(dfsl::build_grid(spec).size() == 17);
}

TEST_CASE("parse_config rejects out-of-range mu") {
  try {
    dfsl::parse_config(R"({"form":"rl","mu":1.5,"grid":{"a":0,"b":4}})",
                       Command::Solve);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mu out of (0,1]") != std::string::npos);
  }
}

TEST_CASE("parse_config accepts coefficient arrays of grid length") {
  const dfsl::RunSpec spec = dfsl::parse_config(
      R"({"form":"gl","mu":0.5,"grid":{"n":2},"p":[1,2,1],"q":0.0,"r":1.0})",
      Command::Solve);
  CHECK(std::get<std::vector<double>>(spec.coeffs.p).size() == 3);

  CHECK_THROWS_AS(
      dfsl::parse_config(
          R"({"form":"gl","mu":0.5,"grid":{"n":2},"p":[1,2],"q":0.0,"r":1.0})",
          Command::Solve),
      ConfigError);
}

TEST_CASE("parse_config is strict about keys, types and domains") {
  try {
    dfsl::parse_config(R"({"form":"gl","mu":0.5,"grid":{"n":4},"mur":1})",
                       Command::Solve);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mur") != std::string::npos);
  }

  try {
    dfsl::parse_config("{oops", Command::Verify);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
  }

  // grid variants
  CHECK_THROWS_AS(dfsl::parse_config(
                      R"({"form":"gl","mu":0.5,"grid":{"n":-1}})",
                      Command::Solve),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(
                      R"({"form":"rl","mu":0.5,"grid":{"a":0,"b":1}})",
                      Command::Solve),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(
                      R"({"form":"gl","mu":0.5,"grid":{"n":2,"a":0}})",
                      Command::Solve),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(
                      R"({"form":"gl","mu":0.5,"grid":{"a":0,"b":4}})",
                      Command::Solve),
                  ConfigError);

  // h only applies to the delta family
  CHECK_THROWS_AS(dfsl::parse_config(
                      R"({"form":"rl","mu":0.5,"grid":{"a":0,"b":4},"h":0.5})",
                      Command::Solve),
                  ConfigError);

  // wrong types and domains
  CHECK_THROWS_AS(dfsl::parse_config(R"({"form":1})", Command::Verify),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(R"({"mu":"x"})", Command::Verify),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(R"({"seed":-1})", Command::Verify),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(R"({"r":0.0})", Command::Verify),
                  ConfigError);
  CHECK_THROWS_AS(dfsl::parse_config(R"({"p":[1,-1,1]})", Command::Verify),
                  ConfigError);

  // verify-only freedom: solve requires the problem keys
  CHECK_THROWS_AS(dfsl::parse_config(R"({"mu":0.5})", Command::Solve),
                  ConfigError);
  CHECK_NOTHROW(dfsl::parse_config(R"({"mu":0.5})", Command::Verify));
  CHECK_NOTHROW(dfsl::parse_config(R"({})", Command::Verify));
}

TEST_CASE("build_grid maps config grids onto lattices") {
  dfsl::RunSpec rl = dfsl::parse_config(
      R"({"form":"rl","mu":0.5,"grid":{"a":2,"b":9}})", Command::Solve);
  const dfsl::Grid interior = dfsl::build_grid(rl);
  CHECK(interior.start == 3);
  CHECK(interior.end == 8);
  CHECK(interior.size() == 6);

  dfsl::RunSpec rl_n = dfsl::parse_config(
      R"({"form":"rl","mu":0.5,"grid":{"n":4}})", Command::Solve);
  CHECK(dfsl::build_grid(rl_n).size() == 5);

  dfsl::RunSpec gl = dfsl::parse_config(
      R"({"form":"gl","mu":0.5,"grid":{"n":4},"h":0.25})", Command::Solve);
  const dfsl::Grid range = dfsl::build_grid(gl);
  CHECK(range.size() == 5);
  CHECK(range.h == 0.25);
}

TEST_CASE("cmd_kernels writes the documented table") {
  dfsl::RunSpec spec;
  spec.command = Command::Kernels;
  spec.mu = 0.5;
  spec.kernel_length = 2;
  spec.out_dir = fresh_dir("kernels");
  REQUIRE(dfsl::cmd_kernels(spec) == 0);
  CHECK(read_file(spec.out_dir / "kernels.csv") ==
        "k,gl_weight,rl_sum,rl_diff\n"
        "0,1,1,1\n"
        "1,-0.5,0.5,-0.5\n"
        "2,-0.125,0.375,-0.125\n");

  spec.mu = 1.0;
  spec.kernel_length = 1;
  spec.out_dir = fresh_dir("kernels-unit");
  REQUIRE(dfsl::cmd_kernels(spec) == 0);
  CHECK(read_file(spec.out_dir / "kernels.csv") ==
        "k,gl_weight,rl_sum,rl_diff\n"
        "0,1,1,1\n"
        "1,-1,1,-1\n");

  spec.kernel_length = 0;
  spec.out_dir = fresh_dir("kernels-zero");
  REQUIRE(dfsl::cmd_kernels(spec) == 0);
  CHECK(read_file(spec.out_dir / "kernels.csv") ==
        "k,gl_weight,rl_sum,rl_diff\n"
        "0,1,1,1\n");
}

TEST_CASE("cmd_solve writes the spectrum with lossless round-trip") {
  const dfsl::RunSpec spec = [] {
    dfsl::RunSpec parsed = dfsl::parse_config(
        R"({"form":"gl","mu":1.0,"grid":{"n":1}})", Command::Solve);
    parsed.out_dir = fresh_dir("solve-pair");
    return parsed;
  }();
  REQUIRE(dfsl::cmd_solve(spec) == 0);

  const auto value_lines = lines_of(read_file(spec.out_dir / "eigenvalues.csv"));
  REQUIRE(value_lines.size() == 2);
  const double lo = std::strtod(value_lines[0].c_str(), nullptr);
  const double hi = std::strtod(value_lines[1].c_str(), nullptr);
  const double root5 = std::sqrt(5.0);
  CHECK(std::abs(lo - (3.0 - root5) / 2.0) < 1e-14);
  CHECK(std::abs(hi - (3.0 + root5) / 2.0) < 1e-14);

  // The 17-significant-digit serialization reproduces the in-memory doubles
  // bit for bit.
  const dfsl::Grid grid = dfsl::build_grid(spec);
  const dfsl::SLProblem problem = dfsl::assemble_problem(
      *spec.form, dfsl::sample_coefficients(spec.coeffs, grid), grid,
      dfsl::FractionalOrder(*spec.mu));
  const dfsl::EigenDecomposition decomp =
      dfsl::generalized_symmetric_eigen(problem.matrix, problem.weight);
  CHECK(lo == decomp.values[0]);
  CHECK(hi == decomp.values[1]);

  const auto vector_rows = lines_of(read_file(spec.out_dir / "eigenvectors.csv"));
  REQUIRE(vector_rows.size() == 2);
  for (int i = 0; i < 2; ++i) {
    std::istringstream row(vector_rows[static_cast<std::size_t>(i)]);
    std::string cell;
    for (int k = 0; k < 2; ++k) {
      REQUIRE(std::getline(row, cell, ','));
      CHECK(std::strtod(cell.c_str(), nullptr) == decomp.vectors(i, k));
    }
  }

  const auto manifest =
      nlohmann::json::parse(read_file(spec.out_dir / "manifest.json"));
  CHECK(manifest.at("command") == "solve");
  CHECK(manifest.at("config").at("form") == "gl");
  CHECK(manifest.at("config").at("grid").at("n") == 1);
  CHECK(manifest.at("results").at("matrix_size") == 2);
  CHECK(manifest.at("results").at("normalized_residual").get<double>() <=
        1e-9);
}

TEST_CASE("cmd_solve on a single-point grid writes a single line") {
  dfsl::RunSpec spec = dfsl::parse_config(
      R"({"form":"gl","mu":1.0,"grid":{"n":0}})", Command::Solve);
  spec.out_dir = fresh_dir("solve-single");
  REQUIRE(dfsl::cmd_solve(spec) == 0);
  CHECK(read_file(spec.out_dir / "eigenvalues.csv") == "1\n");
}

TEST_CASE("cmd_solve rejects invalid coefficients before writing anything") {
  dfsl::RunSpec spec = dfsl::parse_config(
      R"({"form":"gl","mu":0.5,"grid":{"n":3}})", Command::Solve);
  spec.coeffs.r = 0.0;  // bypasses parse-time validation on purpose
  spec.out_dir = fresh_dir("solve-bad");
  CHECK(dfsl::cmd_solve(spec) == 1);
  CHECK(!fs::exists(spec.out_dir / "eigenvalues.csv"));
  CHECK(!fs::exists(spec.out_dir / "eigenvectors.csv"));
  CHECK(!fs::exists(spec.out_dir / "manifest.json"));
}

TEST_CASE("cmd_verify writes the restricted report and exits zero") {
  dfsl::RunSpec spec = dfsl::parse_config(
      R"({"form":"gl","mu":0.5,"grid":{"n":15},"seed":5})", Command::Verify);
  spec.out_dir = fresh_dir("verify-restricted");
  CHECK(dfsl::cmd_verify(spec) == 0);

  const auto report =
      nlohmann::json::parse(read_file(spec.out_dir / "report.json"));
  CHECK(report.at("seed") == 5);
  CHECK(report.at("summary").at("total") == 7);
  CHECK(report.at("summary").at("failed") == 0);
  CHECK(report.at("results").size() == 7);
  for (const auto& entry : report.at("results")) {
    CHECK(entry.at("status") == "pass");
  }
}
