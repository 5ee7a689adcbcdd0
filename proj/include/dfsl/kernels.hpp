#pragma once

#include <cstddef>
#include <vector>

namespace dfsl {

/// Fractional order restricted to (0, 1]. Construction rejects anything else,
/// so downstream code can rely on the range without re-checking.
class FractionalOrder {
 public:
  explicit FractionalOrder(double mu);
  double value() const noexcept { return mu_; }

 private:
  double mu_;
};

enum class KernelKind {
  GlWeights,    ///< signed generalized binomial weights of the delta difference
  RlSumKernel,  ///< rising-factorial kernel of the nabla fractional sum
  RlDiffKernel  ///< backward difference of the (1-mu) sum kernel
};

/// One-dimensional coefficient sequence at lags 0..m. A lower-triangular
/// Toeplitz operator matrix has this sequence as its first column.
struct ToeplitzKernel {
  KernelKind kind;
  FractionalOrder mu;
  std::vector<double> coeffs;

  /// Largest lag stored (coeffs has length() + 1 entries).
  int length() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double operator[](std::size_t k) const { return coeffs[k]; }
};

/// ln Gamma(x) for x > 0. Non-positive or non-finite x is a domain error.
double log_gamma(double x);

/// Falling factorial Gamma(t+1) / Gamma(t-alpha+1). Uses an exact integer
/// product when alpha is a small non-negative integer, otherwise log-gamma
/// ratios with sign tracking. Gamma poles raise a domain error.
double falling_factorial(double t, double alpha);

/// Rising factorial Gamma(t+alpha) / Gamma(t).
double rising_factorial(double t, double alpha);

/// Signed binomial-type weights w[0..m] of the delta fractional difference:
/// w[0] = 1, w[s] = w[s-1] * (s-1-mu) / s. Gamma-free.
ToeplitzKernel gl_weights(FractionalOrder mu, int m);

/// Normalized nabla fractional sum kernel c[0..m]:
/// c[0] = 1, c[k] = c[k-1] * (k+mu-1) / k. Gamma- and overflow-free.
ToeplitzKernel rl_sum_kernel(FractionalOrder mu, int m);

/// Nabla fractional difference kernel: the first backward difference of the
/// (1-mu) sum kernel. mu = 1 is the exact backward-difference kernel
/// [1, -1, 0, ...].
ToeplitzKernel rl_diff_kernel(FractionalOrder mu, int m);

}  // namespace dfsl
