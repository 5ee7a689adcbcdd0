#include "dfsl/sl_assembly.hpp"

#include <stdexcept>
#include <string>

namespace dfsl {

namespace {

Eigen::VectorXd sample_one(const CoefficientValue& value, int n,
                           const char* name) {
  if (const double* c = std::get_if<double>(&value)) {
    return Eigen::VectorXd::Constant(n, *c);
  }
  const auto& list = std::get<std::vector<double>>(value);
  if (static_cast<int>(list.size()) != n) {
    throw std::invalid_argument(std::string(name) + " has " +
                                std::to_string(list.size()) +
                                " entries but the grid has " +
                                std::to_string(n));
  }
  return Eigen::Map<const Eigen::VectorXd>(list.data(), n);
}

void require_positive(const Eigen::VectorXd& v, const char* name) {
  std::string bad;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      if (!bad.empty()) bad += ", ";
      bad += std::to_string(i);
    }
  }
  if (!bad.empty()) {
    throw std::invalid_argument(std::string(name) +
                                " must be positive; offending indices: " + bad);
  }
}

// M = A diag(p) A^T + diag(q), mirrored from the lower triangle so the result
// is symmetric bit-exactly.
Eigen::MatrixXd symmetric_sandwich(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& p,
                                   const Eigen::VectorXd& q) {
  Eigen::MatrixXd m = a * p.asDiagonal() * a.transpose();
  m.triangularView<Eigen::StrictlyUpper>() =
      m.triangularView<Eigen::StrictlyLower>().transpose();
  m.diagonal() += q;
  return m;
}

SLProblem assemble(Form form, const Coefficients& coeffs, const Grid& grid,
                   FractionalOrder mu) {
  const int n = grid.size();
  if (coeffs.p.size() != n || coeffs.q.size() != n || coeffs.r.size() != n) {
    throw std::invalid_argument("coefficient vectors must match the grid size");
  }
  require_positive(coeffs.p, "p");
  require_positive(coeffs.r, "r");
  const OperatorMatrix a = form == Form::RL
                               ? nabla_left_diff_matrix(grid, mu)
                               : delta_left_diff_matrix(grid, mu);
  Eigen::MatrixXd m = symmetric_sandwich(a.entries, coeffs.p, coeffs.q);
  return {coeffs, grid, mu.value(), form, std::move(m), coeffs.r};
}

}  // namespace

const char* form_name(Form form) { return form == Form::RL ? "rl" : "gl"; }

Coefficients sample_coefficients(const CoefficientSpec& spec,
                                 const Grid& grid) {
  const int n = grid.size();
  Coefficients coeffs{sample_one(spec.p, n, "p"), sample_one(spec.q, n, "q"),
                      sample_one(spec.r, n, "r")};
  require_positive(coeffs.p, "p");
  require_positive(coeffs.r, "r");
  return coeffs;
}

SLProblem assemble_rl_problem(const Coefficients& coeffs, const Grid& grid,
                              FractionalOrder mu) {
  return assemble(Form::RL, coeffs, grid, mu);
}

SLProblem assemble_gl_problem(const Coefficients& coeffs, const Grid& grid,
                              FractionalOrder mu) {
  return assemble(Form::GL, coeffs, grid, mu);
}

SLProblem assemble_problem(Form form, const Coefficients& coeffs,
                           const Grid& grid, FractionalOrder mu) {
  return assemble(form, coeffs, grid, mu);
}

double weighted_inner(const Eigen::Ref<const Eigen::VectorXd>& u,
                      const Eigen::Ref<const Eigen::VectorXd>& v,
                      const Eigen::Ref<const Eigen::VectorXd>& r) {
  if (u.size() != v.size() || u.size() != r.size()) {
    throw std::invalid_argument("weighted_inner requires equal lengths");
  }
  return (r.array() * u.array() * v.array()).sum();
}

}  // namespace dfsl
