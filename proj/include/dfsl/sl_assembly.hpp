#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "dfsl/fracops.hpp"

namespace dfsl {

/// Which fractional family the operator is built from.
enum class Form { RL, GL };

const char* form_name(Form form);

/// Coefficient functions sampled on the grid. p and r are strictly positive,
/// q is any real-valued function.
struct Coefficients {
  Eigen::VectorXd p;
  Eigen::VectorXd q;
  Eigen::VectorXd r;
};

/// A coefficient given either as a constant (broadcast over the grid) or an
/// explicit per-point list.
using CoefficientValue = std::variant<double, std::vector<double>>;

struct CoefficientSpec {
  CoefficientValue p{1.0};
  CoefficientValue q{0.0};
  CoefficientValue r{1.0};
};

/// Validates and samples p, q, r onto the grid. Rejects non-positive p or r
/// (naming the offending indices) and length mismatches.
Coefficients sample_coefficients(const CoefficientSpec& spec, const Grid& grid);

/// A weighted eigenvalue problem matrix = A diag(p) A^T + diag(q) with weight
/// diag(r). The matrix is symmetric bit-exactly by construction.
struct SLProblem {
  Coefficients coeffs;
  Grid grid;
  double mu;
  Form form;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd weight;
};

/// Nabla-family operator: the left fractional difference composed with p
/// times its transpose (the right difference), plus diag(q). Unit step only.
SLProblem assemble_rl_problem(const Coefficients& coeffs, const Grid& grid,
                              FractionalOrder mu);

/// Delta-family operator built the same way from the delta left difference
/// (step h taken from the grid).
SLProblem assemble_gl_problem(const Coefficients& coeffs, const Grid& grid,
                              FractionalOrder mu);

SLProblem assemble_problem(Form form, const Coefficients& coeffs,
                           const Grid& grid, FractionalOrder mu);

/// Weighted inner product sum_i r[i] u[i] v[i].
double weighted_inner(const Eigen::Ref<const Eigen::VectorXd>& u,
                      const Eigen::Ref<const Eigen::VectorXd>& v,
                      const Eigen::Ref<const Eigen::VectorXd>& r);

}  // namespace dfsl
