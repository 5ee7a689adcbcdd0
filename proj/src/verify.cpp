#include "dfsl/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <utility>

#include "dfsl/random.hpp"
#include "dfsl/version.hpp"

namespace dfsl {

namespace {

constexpr double kSelfAdjointTol = 1e-10;
constexpr double kOrthogonalityTol = 1e-8;
constexpr double kRealityTol = 1e-8;
constexpr double kSbpTol = 1e-12;
constexpr double kKernelIdentityTol = 1e-12;
constexpr double kClassicalTol = 1e-10;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string describe_value(const CoefficientValue& value) {
  if (const double* c = std::get_if<double>(&value)) {
    return fmt(*c);
  }
  return "array[" +
         std::to_string(std::get<std::vector<double>>(value).size()) + "]";
}

std::string describe(const CoefficientSpec& spec) {
  return "p=" + describe_value(spec.p) + ",q=" + describe_value(spec.q) +
         ",r=" + describe_value(spec.r);
}

Grid make_grid(Form form, int n, double h) {
  return form == Form::RL ? Grid::interior(0, n + 1) : Grid::range(n - 1, h);
}

double effective_h(Form form, double h) {
  return form == Form::RL ? 1.0 : h;
}

SLProblem build_problem(Form form, int n, FractionalOrder mu,
                        const CoefficientSpec& spec, double h) {
  const Grid grid = make_grid(form, n, h);
  return assemble_problem(form, sample_coefficients(spec, grid), grid, mu);
}

std::string check_name(const char* check, Form form, int n, double mu) {
  return std::string(check) + "/" + form_name(form) + "/n" +
         std::to_string(n) + "/mu" + fmt(mu);
}

const char* family_word(Form form) {
  return form == Form::RL ? "nabla" : "delta";
}

}  // namespace

CheckResult make_check(std::string name, std::string anchor, double observed,
                       double tolerance, std::uint64_t seed,
                       CheckParams params) {
  CheckResult result{std::move(name), std::move(anchor),
                     observed <= tolerance, observed,
                     tolerance, seed,
                     std::move(params)};
  return result;
}

CheckResult check_self_adjointness(Form form, int n, FractionalOrder mu,
                                   const CoefficientSpec& coeffs, int trials,
                                   std::uint64_t seed,
                                   const MatrixPerturbation& perturb,
                                   double h) {
  h = effective_h(form, h);
  SLProblem problem = build_problem(form, n, mu, coeffs, h);
  if (perturb) perturb(problem.matrix);
  const double norm = matrix_inf_norm(problem.matrix);
  UniformSource source(seed);
  double observed = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd u = source.vector(n);
    const Eigen::VectorXd v = source.vector(n);
    const double defect =
        std::abs((problem.matrix * u).dot(v) - u.dot(problem.matrix * v));
    const double denom = u.norm() * v.norm() * norm;
    observed = std::max(observed, denom > 0.0 ? defect / denom : defect);
  }
  return make_check(
      check_name("self_adjointness", form, n, mu.value()),
      std::string("self-adjointness of the ") + family_word(form) +
          "-form operator: <Lu,v> = <u,Lv>",
      observed, kSelfAdjointTol, seed,
      {form, mu.value(), n, h, std::nullopt, describe(coeffs)});
}

CheckResult check_orthogonality(Form form, int n, FractionalOrder mu,
                                const CoefficientSpec& coeffs, double h) {
  h = effective_h(form, h);
  SLProblem problem = build_problem(form, n, mu, coeffs, h);
  const EigenDecomposition decomp =
      generalized_symmetric_eigen(problem.matrix, problem.weight);
  double observed = 0.0;
  for (Eigen::Index i = 0; i < decomp.vectors.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < decomp.vectors.cols(); ++j) {
      observed = std::max(
          observed, std::abs(weighted_inner(decomp.vectors.col(i),
                                            decomp.vectors.col(j),
                                            problem.weight)));
    }
  }
  return make_check(
      check_name("orthogonality", form, n, mu.value()),
      std::string("eigenfunctions for distinct eigenvalues are orthogonal in "
                  "the r-weighted inner product (") +
          family_word(form) + " form)",
      observed, kOrthogonalityTol, 0,
      {form, mu.value(), n, h, std::nullopt, describe(coeffs)});
}

CheckResult check_reality(Form form, int n, FractionalOrder mu,
                          const CoefficientSpec& coeffs,
                          const MatrixPerturbation& perturb, double h) {
  h = effective_h(form, h);
  SLProblem problem = build_problem(form, n, mu, coeffs, h);
  if (perturb) perturb(problem.matrix);
  const std::string name = check_name("reality", form, n, mu.value());
  const std::string anchor =
      std::string("all eigenvalues of the weighted ") + family_word(form) +
      "-form problem are real";
  const CheckParams params{form, mu.value(), n, h, std::nullopt,
                           describe(coeffs)};
  const double symmetry =
      congruence_symmetry_residual(problem.matrix, problem.weight);
  if (symmetry > kRealityTol) {
    // The congruence is not symmetric, so reality is not certified; do not
    // attempt the eigensolve.
    return make_check(name, anchor, symmetry, kRealityTol, 0, params);
  }
  const EigenDecomposition decomp =
      generalized_symmetric_eigen(problem.matrix, problem.weight);
  const double observed =
      std::max(symmetry, residual_check(problem, decomp));
  return make_check(name, anchor, observed, kRealityTol, 0, params);
}

CheckResult check_sbp(Form form, int n, FractionalOrder mu, int trials,
                      std::uint64_t seed, const MatrixPerturbation& perturb,
                      double h) {
  h = effective_h(form, h);
  const Grid grid = make_grid(form, n, h);
  OperatorMatrix left = form == Form::RL ? nabla_left_diff_matrix(grid, mu)
                                         : delta_left_diff_matrix(grid, mu);
  OperatorMatrix right = form == Form::RL ? nabla_right_diff_matrix(grid, mu)
                                          : delta_right_diff_matrix(grid, mu);
  if (perturb) perturb(right.entries);
  const double norm = matrix_inf_norm(left.entries);
  UniformSource source(seed);
  double observed = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd u = source.vector(n);
    const Eigen::VectorXd v = source.vector(n);
    const double defect = sbp_residual(left, right, u, v);
    const double denom = u.norm() * v.norm() * norm;
    observed = std::max(observed, denom > 0.0 ? defect / denom : defect);
  }
  return make_check(
      check_name("summation_by_parts", form, n, mu.value()),
      std::string("summation by parts pairs the left and right ") +
          family_word(form) + " fractional differences",
      observed, kSbpTol, seed,
      {form, mu.value(), n, h, std::nullopt, {}});
}

CheckResult check_kernel_identity(FractionalOrder mu, int m) {
  const ToeplitzKernel diff = rl_diff_kernel(mu, m);
  const ToeplitzKernel weights = gl_weights(mu, m);
  double observed = 0.0;
  for (int k = 0; k <= m; ++k) {
    observed = std::max(observed,
                        std::abs(diff[static_cast<std::size_t>(k)] -
                                 weights[static_cast<std::size_t>(k)]));
  }
  return make_check(
      "kernel_identity/mu" + fmt(mu.value()),
      "the unit-step nabla fractional difference has the "
      "Grunwald-Letnikov weights",
      observed, kKernelIdentityTol, 0,
      {std::nullopt, mu.value(), std::nullopt, std::nullopt, m, {}});
}

CheckResult check_classical_reduction(int n) {
  SLProblem problem = build_problem(Form::GL, n, FractionalOrder(1.0),
                                    CoefficientSpec{}, 1.0);
  const EigenDecomposition decomp =
      generalized_symmetric_eigen(problem.matrix, problem.weight);
  double observed = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double expected = 2.0 - 2.0 * std::cos((2.0 * k - 1.0) * kPi /
                                                 (2.0 * n + 1.0));
    observed = std::max(observed, std::abs(decomp.values[k - 1] - expected));
  }
  return make_check(
      "classical_reduction/n" + std::to_string(n),
      "at order one the operator reduces to the classical second "
      "difference with known spectrum",
      observed, kClassicalTol, 0,
      {std::nullopt, 1.0, n, 1.0, std::nullopt, "p=1,q=0,r=1"});
}

VerificationReport run_suite(const SuiteConfig& config) {
  VerificationReport report;
  report.version = kVersion;
  report.rng = kRngName;
  report.seed = config.seed;
  {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    report.timestamp = buf;
  }

  std::uint64_t counter = 0;
  const auto next_seed = [&config, &counter]() {
    return splitmix64(config.seed + counter++);
  };

  for (const CheckKind kind : config.checks) {
    switch (kind) {
      case CheckKind::SelfAdjointness:
        for (const Form form : config.forms) {
          for (const int n : config.sizes) {
            for (const double mu : config.mus) {
              report.results.push_back(check_self_adjointness(
                  form, n, FractionalOrder(mu), config.coeffs, config.trials,
                  next_seed(), {}, config.h));
            }
          }
        }
        break;
      case CheckKind::Orthogonality:
        for (const Form form : config.forms) {
          for (const int n : config.sizes) {
            for (const double mu : config.mus) {
              report.results.push_back(check_orthogonality(
                  form, n, FractionalOrder(mu), config.coeffs, config.h));
              if (config.orthogonality_varying_weight) {
                CoefficientSpec varying = config.coeffs;
                std::vector<double> r(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                  r[static_cast<std::size_t>(i)] =
                      1.0 + static_cast<double>(i) / n;
                }
                varying.r = std::move(r);
                CheckResult result = check_orthogonality(
                    form, n, FractionalOrder(mu), varying, config.h);
                result.name += "/r-linear";
                result.params.coefficients = "p=1,q=0,r=1+i/n";
                report.results.push_back(std::move(result));
              }
            }
          }
        }
        break;
      case CheckKind::Reality:
        for (const Form form : config.forms) {
          for (const int n : config.sizes) {
            for (const double mu : config.mus) {
              report.results.push_back(check_reality(
                  form, n, FractionalOrder(mu), config.coeffs, {}, config.h));
            }
          }
        }
        break;
      case CheckKind::SummationByParts:
        for (const Form form : config.forms) {
          for (const int n : config.sizes) {
            for (const double mu : config.mus) {
              report.results.push_back(check_sbp(form, n, FractionalOrder(mu),
                                                 config.trials, next_seed(),
                                                 {}, config.h));
            }
          }
        }
        break;
      case CheckKind::KernelIdentity:
        for (const double mu : config.mus) {
          report.results.push_back(
              check_kernel_identity(FractionalOrder(mu), config.kernel_length));
        }
        break;
      case CheckKind::ClassicalReduction:
        for (const int n : config.sizes) {
          report.results.push_back(check_classical_reduction(n));
        }
        break;
    }
  }

  report.total = static_cast<int>(report.results.size());
  for (const CheckResult& result : report.results) {
    if (result.passed) {
      ++report.passed;
    } else {
      ++report.failed;
    }
  }
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["version"] = report.version;
  doc["rng"] = report.rng;
  doc["seed"] = report.seed;
  doc["timestamp"] = report.timestamp;
  doc["summary"] = {{"total", report.total},
                    {"passed", report.passed},
                    {"failed", report.failed}};
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const CheckResult& result : report.results) {
    nlohmann::ordered_json entry;
    entry["name"] = result.name;
    entry["anchor"] = result.anchor;
    entry["status"] = result.passed ? "pass" : "fail";
    entry["observed"] = result.observed;
    entry["tolerance"] = result.tolerance;
    entry["seed"] = result.seed;
    nlohmann::ordered_json params;
    if (result.params.form) params["form"] = form_name(*result.params.form);
    if (result.params.mu) params["mu"] = *result.params.mu;
    if (result.params.n) params["n"] = *result.params.n;
    if (result.params.h) params["h"] = *result.params.h;
    if (result.params.m) params["m"] = *result.params.m;
    if (!result.params.coefficients.empty()) {
      params["coefficients"] = result.params.coefficients;
    }
    entry["parameters"] = std::move(params);
    results.push_back(std::move(entry));
  }
  doc["results"] = std::move(results);
  return doc.dump(2) + "\n";
}

}  // namespace dfsl
