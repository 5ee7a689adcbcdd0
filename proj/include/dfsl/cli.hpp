#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "dfsl/sl_assembly.hpp"

namespace dfsl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Solve, Verify, Kernels };

/// Grid as written in the config: either an interval [a, b] (the operator
/// lives on its interior) or an endpoint n (lattice {0..n}, size n + 1).
struct GridSpec {
  std::optional<std::pair<int, int>> ab;
  std::optional<int> n;
};

/// A validated run configuration. For solve, form/mu/grid are present; for
/// verify any of them may be absent, which widens the report to the default
/// sweep over that parameter.
struct RunSpec {
  Command command = Command::Solve;
  std::optional<Form> form;
  std::optional<double> mu;
  std::optional<GridSpec> grid;
  double h = 1.0;
  CoefficientSpec coeffs;
  std::uint64_t seed = 1;
  int kernel_length = 0;
  std::filesystem::path out_dir;
};

/// Parses a UTF-8 JSON config document. The schema is strict: unknown keys,
/// wrong types, and domain violations (mu outside (0, 1], non-positive p or
/// r, empty grids) are all errors that name the offending key.
RunSpec parse_config(const std::string& text, Command command);

/// Concrete lattice for the configured form and grid.
Grid build_grid(const RunSpec& spec);

/// Solves the configured problem and writes eigenvalues.csv,
/// eigenvectors.csv and manifest.json into out_dir. Returns 0 on success,
/// 1 on validation failure (nothing written), 2 on numerical failure.
int cmd_solve(const RunSpec& spec);

/// Runs the verification suite restricted to whatever the config pins down
/// and writes report.json. Returns 0 iff every check passed, 3 if any
/// failed, 1/2 for validation/numerical errors.
int cmd_verify(const RunSpec& spec);

/// Writes kernels.csv with columns k, gl_weight, rl_sum, rl_diff for
/// k = 0..kernel_length.
int cmd_kernels(const RunSpec& spec);

}  // namespace dfsl
