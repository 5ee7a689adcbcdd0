#pragma once

#include <Eigen/Dense>

#include "dfsl/grid.hpp"
#include "dfsl/kernels.hpp"

namespace dfsl {

enum class OperatorSide { Left, Right };

enum class OperatorKind { NablaSum, NablaDiff, DeltaDiff };

struct OperatorMeta {
  OperatorKind kind;
  OperatorSide side;
  double mu;
  Grid grid;
};

/// Dense realization of a fractional operator on a finite grid. Left
/// operators are lower-triangular Toeplitz; right operators are their exact
/// transposes (upper-triangular Toeplitz).
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  OperatorMeta meta;

  int size() const noexcept { return static_cast<int>(entries.rows()); }
};

/// Nabla left fractional sum on the grid (h = 1): lower Toeplitz with first
/// column rl_sum_kernel(mu).
OperatorMatrix nabla_left_sum_matrix(const Grid& grid, FractionalOrder mu);

/// Nabla left fractional difference (h = 1): lower Toeplitz with first column
/// rl_diff_kernel(mu). At mu = 1 this is exactly the backward difference.
OperatorMatrix nabla_left_diff_matrix(const Grid& grid, FractionalOrder mu);

/// Nabla right fractional difference: the exact transpose of the left
/// difference, the unique matrix satisfying the summation-by-parts identity
/// on the finite grid.
OperatorMatrix nabla_right_diff_matrix(const Grid& grid, FractionalOrder mu);

/// Delta left fractional difference on {0..N} with step h: lower Toeplitz
/// with first column gl_weights(mu) / h^mu.
OperatorMatrix delta_left_diff_matrix(const Grid& grid, FractionalOrder mu);

/// Delta right fractional difference: exact transpose of the left one.
OperatorMatrix delta_right_diff_matrix(const Grid& grid, FractionalOrder mu);

/// Matrix-free lower-triangular Toeplitz application under zero extension:
/// y[i] = scale * sum_{k<=i} kernel[k] * x[i-k]. The kernel must cover lags
/// up to x.size() - 1.
Eigen::VectorXd apply_operator(const ToeplitzKernel& kernel, double scale,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

/// |sum_s u(s) (left v)(s) - sum_s v(s) (right u)(s)|, the defect of the
/// summation-by-parts identity. Zero up to rounding when right = left^T.
double sbp_residual(const OperatorMatrix& left, const OperatorMatrix& right,
                    const Eigen::Ref<const Eigen::VectorXd>& u,
                    const Eigen::Ref<const Eigen::VectorXd>& v);

/// Matrix infinity norm (maximum absolute row sum).
double matrix_inf_norm(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace dfsl
