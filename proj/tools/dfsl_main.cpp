#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dfsl/cli.hpp"
#include "dfsl/version.hpp"

namespace {

int run_with_config(const std::string& config_path, const std::string& out_dir,
                    dfsl::Command command) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 1;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  dfsl::RunSpec spec;
  try {
    spec = dfsl::parse_config(buffer.str(), command);
  } catch (const dfsl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  spec.out_dir = out_dir;
  return command == dfsl::Command::Solve ? dfsl::cmd_solve(spec)
                                         : dfsl::cmd_verify(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete fractional Sturm-Liouville toolkit"};
  app.set_version_flag("--version", dfsl::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double mu = 0.0;
  int length = 0;

  CLI::App* solve = app.add_subcommand(
      "solve", "solve the configured eigenproblem and write spectra");
  solve->add_option("--config", config_path, "JSON problem configuration")
      ->required();
  solve->add_option("--out", out_dir, "output directory")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification suite and write report.json");
  verify->add_option("--config", config_path, "JSON sweep configuration")
      ->required();
  verify->add_option("--out", out_dir, "output directory")->required();

  CLI::App* kernels = app.add_subcommand(
      "kernels", "dump the coefficient sequences to kernels.csv");
  kernels->add_option("--mu", mu, "fractional order in (0, 1]")->required();
  kernels->add_option("--m", length, "largest lag to write")->required();
  kernels->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    return run_with_config(config_path, out_dir, dfsl::Command::Solve);
  }
  if (verify->parsed()) {
    return run_with_config(config_path, out_dir, dfsl::Command::Verify);
  }

  dfsl::RunSpec spec;
  spec.command = dfsl::Command::Kernels;
  if (!(mu > 0.0 && mu <= 1.0)) {
    std::cerr << "error: mu out of (0,1]\n";
    return 1;
  }
  if (length < 0) {
    std::cerr << "error: --m must be non-negative\n";
    return 1;
  }
  spec.mu = mu;
  spec.kernel_length = length;
  spec.out_dir = out_dir;
  return dfsl::cmd_kernels(spec);
}
