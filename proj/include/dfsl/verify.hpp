#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dfsl/eigensolve.hpp"

namespace dfsl {

struct CheckParams {
  std::optional<Form> form;
  std::optional<double> mu;
  std::optional<int> n;  ///< grid size (matrix dimension)
  std::optional<double> h;
  std::optional<int> m;  ///< kernel length, when the check is about kernels
  std::string coefficients;
};

struct CheckResult {
  std::string name;
  std::string anchor;  ///< the certified property, human- and machine-readable
  bool passed;
  double observed;
  double tolerance;
  std::uint64_t seed;
  CheckParams params;
};

/// passed is derived, never set by hand: pass iff observed <= tolerance.
CheckResult make_check(std::string name, std::string anchor, double observed,
                       double tolerance, std::uint64_t seed,
                       CheckParams params);

/// Test-only hook: lets a suite plant a defect in an assembled matrix and
/// confirm the corresponding check actually fails.
using MatrixPerturbation = std::function<void(Eigen::MatrixXd&)>;

/// Bilinear self-adjointness defect max |<Mu,v> - <u,Mv>| over seeded random
/// pairs, normalized by |u| |v| |M|_inf. Tolerance 1e-10. The step h applies
/// to the delta family only (the nabla family is pinned to h = 1).
CheckResult check_self_adjointness(Form form, int n, FractionalOrder mu,
                                   const CoefficientSpec& coeffs, int trials,
                                   std::uint64_t seed,
                                   const MatrixPerturbation& perturb = {},
                                   double h = 1.0);

/// max_{i != j} |<x_i, x_j>_r| over the computed eigenvectors. Tolerance 1e-8.
CheckResult check_orthogonality(Form form, int n, FractionalOrder mu,
                                const CoefficientSpec& coeffs, double h = 1.0);

/// Reality certificate: symmetry defect of the congruence plus the eigenpair
/// residual. Tolerance 1e-8. A matrix that fails the symmetry screen fails
/// the check without attempting the eigensolve.
CheckResult check_reality(Form form, int n, FractionalOrder mu,
                          const CoefficientSpec& coeffs,
                          const MatrixPerturbation& perturb = {},
                          double h = 1.0);

/// Summation-by-parts defect of the left/right operator pair over seeded
/// random vector pairs, normalized as in sbp_residual. Tolerance 1e-12.
CheckResult check_sbp(Form form, int n, FractionalOrder mu, int trials,
                      std::uint64_t seed,
                      const MatrixPerturbation& perturb = {}, double h = 1.0);

/// max_k |rl_diff_kernel(mu)[k] - gl_weights(mu)[k]| for k <= m.
/// Tolerance 1e-12.
CheckResult check_kernel_identity(FractionalOrder mu, int m);

/// Order-one spectrum against the closed form 2 - 2 cos((2k-1) pi / (2n+1)).
/// Tolerance 1e-10.
CheckResult check_classical_reduction(int n);

enum class CheckKind {
  SelfAdjointness,
  Orthogonality,
  Reality,
  SummationByParts,
  KernelIdentity,
  ClassicalReduction,
};

struct SuiteConfig {
  std::vector<double> mus{0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  std::vector<int> sizes{4, 16, 64};
  std::vector<Form> forms{Form::RL, Form::GL};
  std::vector<CheckKind> checks{
      CheckKind::SelfAdjointness, CheckKind::Orthogonality, CheckKind::Reality,
      CheckKind::SummationByParts, CheckKind::KernelIdentity,
      CheckKind::ClassicalReduction};
  CoefficientSpec coeffs{};
  /// Also run orthogonality with the linearly growing weight r[i] = 1 + i/n.
  bool orthogonality_varying_weight = true;
  double h = 1.0;
  int trials = 100;
  int kernel_length = 512;
  std::uint64_t seed = 1;
};

struct VerificationReport {
  std::vector<CheckResult> results;
  int total = 0;
  int passed = 0;
  int failed = 0;
  std::string version;
  std::string rng;
  std::uint64_t seed = 0;
  std::string timestamp;
};

/// Runs every configured check over the parameter sweep. Individual failures
/// are recorded, never thrown. Deterministic for a fixed config and seed.
VerificationReport run_suite(const SuiteConfig& config);

/// Report serialized with stable key order; byte-identical across runs with
/// the same config and seed, apart from the timestamp field.
std::string report_to_json(const VerificationReport& report);

}  // namespace dfsl
