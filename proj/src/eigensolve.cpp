#include "dfsl/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace dfsl {

namespace {

constexpr double kOffNormFactor = 1e-13;  // of the Frobenius norm
constexpr double kSymmetryFactor = 1e-12;  // of the infinity norm
constexpr double kClusterFactor = 1e-8;    // of the infinity norm
constexpr double kSignThreshold = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

double asymmetry(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignThreshold) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

JacobiEigen jacobi_eigen(const Eigen::Ref<const Eigen::MatrixXd>& s) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n || n == 0) {
    throw std::invalid_argument("jacobi_eigen requires a non-empty square matrix");
  }
  const double inf_norm = matrix_inf_norm(s);
  if (asymmetry(s) > kSymmetryFactor * inf_norm) {
    throw std::invalid_argument("jacobi_eigen requires a symmetric matrix");
  }

  Eigen::MatrixXd a = s;
  a.triangularView<Eigen::StrictlyUpper>() =
      a.triangularView<Eigen::StrictlyLower>().transpose();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double target = kOffNormFactor * a.norm();
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target && sweep < kMaxSweeps) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(p, k) = a(k, p);
          a(k, q) = sn * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }
  if (off > target) {
    throw ConvergenceError(
        "Jacobi iteration stalled after " + std::to_string(sweep) +
            " sweeps; off-diagonal norm " + std::to_string(off) +
            " above target " + std::to_string(target),
        off, sweep);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index lhs,
                                                    Eigen::Index rhs) {
    return a(lhs, lhs) < a(rhs, rhs);
  });

  JacobiEigen result{Eigen::VectorXd(n), Eigen::MatrixXd(n, n), sweep, off};
  for (Eigen::Index k = 0; k < n; ++k) {
    result.values[k] = a(order[static_cast<std::size_t>(k)],
                         order[static_cast<std::size_t>(k)]);
    result.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    fix_sign(result.vectors.col(k));
  }
  return result;
}

EigenDecomposition generalized_symmetric_eigen(
    const Eigen::Ref<const Eigen::MatrixXd>& m,
    const Eigen::Ref<const Eigen::VectorXd>& r) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n == 0) {
    throw std::invalid_argument("matrix must be square and non-empty");
  }
  if (r.size() != n) {
    throw std::invalid_argument("weight vector must match the matrix size");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(r[i] > 0.0)) {
      throw std::invalid_argument("weight entry " + std::to_string(i) +
                                  " is not positive");
    }
  }

  const Eigen::VectorXd inv_sqrt = r.array().rsqrt();
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      s(i, j) = m(i, j) * inv_sqrt[i] * inv_sqrt[j];
      s(j, i) = s(i, j);
    }
  }

  JacobiEigen je = jacobi_eigen(s);

  Eigen::MatrixXd x = inv_sqrt.asDiagonal() * je.vectors;

  // Re-orthogonalize within near-degenerate clusters in the r inner product,
  // then renormalize every vector to <x, x>_r = 1.
  const double gap = kClusterFactor * matrix_inf_norm(m);
  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo;
    while (hi + 1 < n && je.values[hi + 1] - je.values[hi] <= gap) ++hi;
    for (Eigen::Index i = lo; i <= hi; ++i) {
      for (Eigen::Index j = lo; j < i; ++j) {
        const double proj = weighted_inner(x.col(i), x.col(j), r);
        x.col(i) -= proj * x.col(j);
      }
      const double norm = std::sqrt(weighted_inner(x.col(i), x.col(i), r));
      x.col(i) /= norm;
    }
    lo = hi + 1;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    fix_sign(x.col(k));
  }

  Eigen::VectorXd residuals(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    residuals[k] = (m * x.col(k) -
                    je.values[k] * (r.array() * x.col(k).array()).matrix())
                       .cwiseAbs()
                       .maxCoeff();
  }
  return {std::move(je.values), std::move(x), std::move(residuals), je.sweeps,
          {}};
}

double residual_check(const SLProblem& problem,
                      const EigenDecomposition& decomp) {
  const Eigen::Index n = problem.matrix.rows();
  if (decomp.vectors.rows() != n || decomp.values.size() != n ||
      problem.weight.size() != n) {
    throw std::invalid_argument("decomposition does not match the problem size");
  }
  const double norm = matrix_inf_norm(problem.matrix);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < decomp.vectors.cols(); ++k) {
    const double defect =
        (problem.matrix * decomp.vectors.col(k) -
         decomp.values[k] *
             (problem.weight.array() * decomp.vectors.col(k).array()).matrix())
            .cwiseAbs()
            .maxCoeff();
    worst = std::max(worst, defect);
  }
  return norm > 0.0 ? worst / norm : worst;
}

double congruence_symmetry_residual(
    const Eigen::Ref<const Eigen::MatrixXd>& m,
    const Eigen::Ref<const Eigen::VectorXd>& r) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || r.size() != n) {
    throw std::invalid_argument("matrix and weight sizes must match");
  }
  const Eigen::VectorXd inv_sqrt = r.array().rsqrt();
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      s(i, j) = m(i, j) * inv_sqrt[i] * inv_sqrt[j];
    }
  }
  const double norm = matrix_inf_norm(s);
  return norm > 0.0 ? asymmetry(s) / norm : 0.0;
}

}  // namespace dfsl
