#include "dfsl/fracops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfsl {

namespace {

Eigen::MatrixXd lower_toeplitz(const ToeplitzKernel& kernel, int n,
                               double scale) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      m(i, j) = scale * kernel[static_cast<std::size_t>(i - j)];
    }
  }
  return m;
}

void require_unit_step(const Grid& grid, const char* op) {
  if (grid.h != 1.0) {
    throw std::invalid_argument(std::string(op) +
                                " requires a unit grid step, got h = " +
                                std::to_string(grid.h));
  }
}

OperatorMatrix transpose_of(OperatorMatrix left) {
  // Entrywise transpose keeps the stored values bit-identical.
  left.entries = left.entries.transpose().eval();
  left.meta.side = OperatorSide::Right;
  return left;
}

}  // namespace

OperatorMatrix nabla_left_sum_matrix(const Grid& grid, FractionalOrder mu) {
  require_unit_step(grid, "nabla_left_sum_matrix");
  const int n = grid.size();
  const ToeplitzKernel kernel = rl_sum_kernel(mu, n - 1);
  return {lower_toeplitz(kernel, n, 1.0),
          {OperatorKind::NablaSum, OperatorSide::Left, mu.value(), grid}};
}

OperatorMatrix nabla_left_diff_matrix(const Grid& grid, FractionalOrder mu) {
  require_unit_step(grid, "nabla_left_diff_matrix");
  const int n = grid.size();
  const ToeplitzKernel kernel = rl_diff_kernel(mu, n - 1);
  return {lower_toeplitz(kernel, n, 1.0),
          {OperatorKind::NablaDiff, OperatorSide::Left, mu.value(), grid}};
}

OperatorMatrix nabla_right_diff_matrix(const Grid& grid, FractionalOrder mu) {
  return transpose_of(nabla_left_diff_matrix(grid, mu));
}

OperatorMatrix delta_left_diff_matrix(const Grid& grid, FractionalOrder mu) {
  const int n = grid.size();
  const ToeplitzKernel kernel = gl_weights(mu, n - 1);
  const double scale = std::pow(grid.h, -mu.value());
  return {lower_toeplitz(kernel, n, scale),
          {OperatorKind::DeltaDiff, OperatorSide::Left, mu.value(), grid}};
}

OperatorMatrix delta_right_diff_matrix(const Grid& grid, FractionalOrder mu) {
  return transpose_of(delta_left_diff_matrix(grid, mu));
}

Eigen::VectorXd apply_operator(const ToeplitzKernel& kernel, double scale,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  const Eigen::Index stored = static_cast<Eigen::Index>(kernel.coeffs.size());
  if (stored < n - 1) {
    throw std::invalid_argument(
        "kernel stores " + std::to_string(stored) +
        " coefficients but the vector needs at least " + std::to_string(n - 1));
  }
  // Lags beyond the stored ones contribute zero, as does x outside the grid.
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    const Eigen::Index top = std::min(i, stored - 1);
    for (Eigen::Index k = 0; k <= top; ++k) {
      acc += kernel[static_cast<std::size_t>(k)] * x[i - k];
    }
    y[i] = scale * acc;
  }
  return y;
}

double sbp_residual(const OperatorMatrix& left, const OperatorMatrix& right,
                    const Eigen::Ref<const Eigen::VectorXd>& u,
                    const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index n = left.entries.rows();
  if (right.entries.rows() != n || u.size() != n || v.size() != n) {
    throw std::invalid_argument("sbp_residual requires matching dimensions");
  }
  const double forward = u.dot(left.entries * v);
  const double backward = v.dot(right.entries * u);
  return std::abs(forward - backward);
}

double matrix_inf_norm(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace dfsl
