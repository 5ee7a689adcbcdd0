#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "dfsl/sl_assembly.hpp"

namespace dfsl {

/// Raised when the Jacobi iteration has not reached its target off-diagonal
/// norm within the sweep budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double off_norm, int sweeps)
      : std::runtime_error(msg), off_norm(off_norm), sweeps(sweeps) {}
  double off_norm;
  int sweeps;
};

struct JacobiEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< orthonormal columns, same order as values
  int sweeps;
  double off_norm;  ///< achieved off-diagonal Frobenius norm
};

/// Cyclic-by-row Jacobi rotations until the off-diagonal Frobenius norm drops
/// below 1e-13 of the Frobenius norm of the input, capped at 100 sweeps.
/// Input must be symmetric to 1e-12 of its infinity norm.
JacobiEigen jacobi_eigen(const Eigen::Ref<const Eigen::MatrixXd>& s);

struct EigenDecomposition {
  Eigen::VectorXd values;     ///< ascending
  Eigen::MatrixXd vectors;    ///< r-orthonormal columns
  Eigen::VectorXd residuals;  ///< per pair, |M x - lambda diag(r) x|_inf
  int sweeps;
  std::string provenance;
};

/// Solves M x = lambda diag(r) x for symmetric M and positive r by reducing
/// to a standard symmetric problem through the diag(r)^{-1/2} congruence.
/// Vectors come back r-orthonormal with a deterministic sign convention
/// (first component above 1e-12 in magnitude is positive); near-degenerate
/// clusters (gap below 1e-8 |M|_inf) are re-orthogonalized explicitly.
EigenDecomposition generalized_symmetric_eigen(
    const Eigen::Ref<const Eigen::MatrixXd>& m,
    const Eigen::Ref<const Eigen::VectorXd>& r);

/// max_k |M x_k - lambda_k diag(r) x_k|_inf / |M|_inf, recomputed from the
/// problem data.
double residual_check(const SLProblem& problem,
                      const EigenDecomposition& decomp);

/// Symmetry defect of the raw congruence diag(r)^{-1/2} M diag(r)^{-1/2},
/// measured as max |S - transpose(S)| / |S|_inf before any symmetrization.
double congruence_symmetry_residual(
    const Eigen::Ref<const Eigen::MatrixXd>& m,
    const Eigen::Ref<const Eigen::VectorXd>& r);

}  // namespace dfsl
