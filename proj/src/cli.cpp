#include "dfsl/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <vector>

#include "dfsl/eigensolve.hpp"
#include "dfsl/verify.hpp"
#include "dfsl/version.hpp"

namespace dfsl {

namespace {

using nlohmann::json;

std::string significant(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void require_known_keys(const json& object, const std::set<std::string>& known,
                        const std::string& where) {
  for (const auto& item : object.items()) {
    if (known.find(item.key()) == known.end()) {
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double read_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw ConfigError("key \"" + key + "\" must be a number");
  }
  return value.get<double>();
}

int read_integer(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw ConfigError("key \"" + key + "\" must be an integer");
  }
  return value.get<int>();
}

CoefficientValue read_coefficient(const json& value, const std::string& key) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_array()) {
    std::vector<double> list;
    list.reserve(value.size());
    for (const auto& entry : value) {
      if (!entry.is_number()) {
        throw ConfigError("key \"" + key +
                          "\" must contain only numbers");
      }
      list.push_back(entry.get<double>());
    }
    return list;
  }
  throw ConfigError("key \"" + key + "\" must be a number or an array");
}

GridSpec read_grid(const json& value) {
  if (!value.is_object()) {
    throw ConfigError("key \"grid\" must be an object with \"a\",\"b\" or \"n\"");
  }
  GridSpec grid;
  if (value.contains("n")) {
    require_known_keys(value, {"n"}, "\"grid\"");
    grid.n = read_integer(value.at("n"), "grid.n");
    if (*grid.n < 0) {
      throw ConfigError("grid.n must be non-negative");
    }
  } else {
    require_known_keys(value, {"a", "b"}, "\"grid\"");
    if (!value.contains("a") || !value.contains("b")) {
      throw ConfigError("key \"grid\" needs both \"a\" and \"b\" (or \"n\")");
    }
    const int a = read_integer(value.at("a"), "grid.a");
    const int b = read_integer(value.at("b"), "grid.b");
    if (b < a + 2) {
      throw ConfigError("grid [a, b] must satisfy b >= a + 2 so the interior "
                        "is non-empty");
    }
    grid.ab = {a, b};
  }
  return grid;
}

int coefficient_length(const CoefficientValue& value) {
  if (std::holds_alternative<double>(value)) return -1;
  return static_cast<int>(std::get<std::vector<double>>(value).size());
}

void require_positive_value(const CoefficientValue& value, const char* name) {
  if (const double* c = std::get_if<double>(&value)) {
    if (!(*c > 0.0)) {
      throw ConfigError(std::string("key \"") + name +
                        "\" must be positive, got " + std::to_string(*c));
    }
    return;
  }
  const auto& list = std::get<std::vector<double>>(value);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!(list[i] > 0.0)) {
      throw ConfigError(std::string("key \"") + name +
                        "\" must be positive everywhere; entry " +
                        std::to_string(i) + " is " + std::to_string(list[i]));
    }
  }
}

void validate_coefficients(const RunSpec& spec) {
  const int lengths[] = {coefficient_length(spec.coeffs.p),
                         coefficient_length(spec.coeffs.q),
                         coefficient_length(spec.coeffs.r)};
  const char* names[] = {"p", "q", "r"};
  for (int i = 0; i < 3; ++i) {
    if (lengths[i] < 0) continue;
    if (!spec.grid) {
      throw ConfigError(std::string("key \"") + names[i] +
                        "\" is an array, which requires an explicit grid");
    }
    const int n = build_grid(spec).size();
    if (lengths[i] != n) {
      throw ConfigError(std::string("key \"") + names[i] + "\" has " +
                        std::to_string(lengths[i]) +
                        " entries but the grid has " + std::to_string(n));
    }
  }
  require_positive_value(spec.coeffs.p, "p");
  require_positive_value(spec.coeffs.r, "r");
}

json coefficient_echo(const CoefficientValue& value) {
  if (const double* c = std::get_if<double>(&value)) return *c;
  return std::get<std::vector<double>>(value);
}

json grid_echo(const GridSpec& grid) {
  json echo;
  if (grid.n) {
    echo["n"] = *grid.n;
  } else {
    echo["a"] = grid.ab->first;
    echo["b"] = grid.ab->second;
  }
  return echo;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw ConfigError("failed writing " + path.string());
  }
}

int run_guarded(const RunSpec& spec, int (*body)(const RunSpec&)) {
  try {
    return body(spec);
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

int solve_body(const RunSpec& spec) {
  const Grid grid = build_grid(spec);
  const Coefficients coeffs = sample_coefficients(spec.coeffs, grid);
  const SLProblem problem =
      assemble_problem(*spec.form, coeffs, grid, FractionalOrder(*spec.mu));
  EigenDecomposition decomp =
      generalized_symmetric_eigen(problem.matrix, problem.weight);
  decomp.provenance = std::string(form_name(*spec.form)) +
                      " mu=" + std::to_string(*spec.mu) +
                      " n=" + std::to_string(grid.size());

  // All computation succeeded; only now touch the filesystem.
  std::filesystem::create_directories(spec.out_dir);

  std::string values_csv;
  for (Eigen::Index k = 0; k < decomp.values.size(); ++k) {
    values_csv += significant(decomp.values[k]);
    values_csv += "\n";
  }
  write_text(spec.out_dir / "eigenvalues.csv", values_csv);

  std::string vectors_csv;
  for (Eigen::Index i = 0; i < decomp.vectors.rows(); ++i) {
    for (Eigen::Index k = 0; k < decomp.vectors.cols(); ++k) {
      if (k > 0) vectors_csv += ",";
      vectors_csv += significant(decomp.vectors(i, k));
    }
    vectors_csv += "\n";
  }
  write_text(spec.out_dir / "eigenvectors.csv", vectors_csv);

  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["command"] = "solve";
  nlohmann::ordered_json echo;
  echo["form"] = form_name(*spec.form);
  echo["mu"] = *spec.mu;
  echo["grid"] = grid_echo(*spec.grid);
  echo["h"] = spec.h;
  echo["p"] = coefficient_echo(spec.coeffs.p);
  echo["q"] = coefficient_echo(spec.coeffs.q);
  echo["r"] = coefficient_echo(spec.coeffs.r);
  echo["seed"] = spec.seed;
  manifest["config"] = std::move(echo);
  nlohmann::ordered_json results;
  results["matrix_size"] = grid.size();
  results["jacobi_sweeps"] = decomp.sweeps;
  results["max_pair_residual"] = decomp.residuals.maxCoeff();
  results["normalized_residual"] = residual_check(problem, decomp);
  manifest["results"] = std::move(results);
  write_text(spec.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int verify_body(const RunSpec& spec) {
  SuiteConfig config;
  config.seed = spec.seed;
  config.h = spec.h;
  config.coeffs = spec.coeffs;
  if (spec.form) config.forms = {*spec.form};
  if (spec.mu) config.mus = {*spec.mu};
  if (spec.grid) config.sizes = {build_grid(spec).size()};

  const VerificationReport report = run_suite(config);

  std::filesystem::create_directories(spec.out_dir);
  write_text(spec.out_dir / "report.json", report_to_json(report));
  return report.failed == 0 ? 0 : 3;
}

int kernels_body(const RunSpec& spec) {
  const FractionalOrder mu(*spec.mu);
  const int m = spec.kernel_length;
  const ToeplitzKernel weights = gl_weights(mu, m);
  const ToeplitzKernel sum = rl_sum_kernel(mu, m);
  const ToeplitzKernel diff = rl_diff_kernel(mu, m);

  std::string csv = "k,gl_weight,rl_sum,rl_diff\n";
  for (int k = 0; k <= m; ++k) {
    const auto lag = static_cast<std::size_t>(k);
    csv += std::to_string(k) + "," + significant(weights[lag]) + "," +
           significant(sum[lag]) + "," + significant(diff[lag]) + "\n";
  }
  std::filesystem::create_directories(spec.out_dir);
  write_text(spec.out_dir / "kernels.csv", csv);
  return 0;
}

}  // namespace

RunSpec parse_config(const std::string& text, Command command) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  require_known_keys(doc, {"form", "mu", "grid", "h", "p", "q", "r", "seed"},
                     "config");

  RunSpec spec;
  spec.command = command;

  if (doc.contains("form")) {
    const auto& value = doc.at("form");
    if (!value.is_string()) {
      throw ConfigError("key \"form\" must be \"rl\" or \"gl\"");
    }
    const std::string name = value.get<std::string>();
    if (name == "rl") {
      spec.form = Form::RL;
    } else if (name == "gl") {
      spec.form = Form::GL;
    } else {
      throw ConfigError("key \"form\" must be \"rl\" or \"gl\", got \"" +
                        name + "\"");
    }
  }
  if (doc.contains("mu")) {
    const double mu = read_number(doc.at("mu"), "mu");
    if (!(mu > 0.0 && mu <= 1.0)) {
      throw ConfigError("mu out of (0,1]");
    }
    spec.mu = mu;
  }
  if (doc.contains("grid")) {
    spec.grid = read_grid(doc.at("grid"));
  }
  if (doc.contains("h")) {
    if (spec.form == Form::RL) {
      throw ConfigError("key \"h\" applies only to the gl form");
    }
    const double h = read_number(doc.at("h"), "h");
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw ConfigError("key \"h\" must be positive and finite");
    }
    spec.h = h;
  }
  if (doc.contains("p")) spec.coeffs.p = read_coefficient(doc.at("p"), "p");
  if (doc.contains("q")) spec.coeffs.q = read_coefficient(doc.at("q"), "q");
  if (doc.contains("r")) spec.coeffs.r = read_coefficient(doc.at("r"), "r");
  if (doc.contains("seed")) {
    const auto& value = doc.at("seed");
    if (!value.is_number_integer() || value.get<long long>() < 0) {
      throw ConfigError("key \"seed\" must be a non-negative integer");
    }
    spec.seed = value.get<std::uint64_t>();
  }

  if (command == Command::Solve) {
    if (!spec.form) throw ConfigError("solve requires key \"form\"");
    if (!spec.mu) throw ConfigError("solve requires key \"mu\"");
    if (!spec.grid) throw ConfigError("solve requires key \"grid\"");
  }
  if (spec.grid && spec.grid->ab && spec.form == Form::GL) {
    throw ConfigError("the gl form takes grid {\"n\": ...}, not an interval");
  }
  validate_coefficients(spec);
  return spec;
}

Grid build_grid(const RunSpec& spec) {
  if (!spec.grid) {
    throw ConfigError("no grid configured");
  }
  const bool delta = spec.form == Form::GL;
  if (spec.grid->ab) {
    return Grid::interior(spec.grid->ab->first, spec.grid->ab->second);
  }
  const int n = *spec.grid->n;
  // The endpoint n yields n + 1 lattice points in both families.
  return delta ? Grid::range(n, spec.h) : Grid::interior(0, n + 2);
}

int cmd_solve(const RunSpec& spec) { return run_guarded(spec, solve_body); }

int cmd_verify(const RunSpec& spec) { return run_guarded(spec, verify_body); }

int cmd_kernels(const RunSpec& spec) { return run_guarded(spec, kernels_body); }

}  // namespace dfsl
