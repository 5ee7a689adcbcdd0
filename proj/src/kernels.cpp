#include "dfsl/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dfsl {

namespace {

// ln|Gamma(x)| together with the sign of Gamma(x). Non-positive integers are
// poles and rejected.
std::pair<double, int> log_abs_gamma(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("gamma argument must be finite, got " +
                            std::to_string(x));
  }
  if (x > 0.0) {
    return {std::lgamma(x), 1};
  }
  if (x == std::floor(x)) {
    throw std::domain_error("gamma pole at non-positive integer argument " +
                            std::to_string(x));
  }
  // Gamma alternates sign between consecutive negative integers.
  const long long fl = static_cast<long long>(std::floor(x));
  const int sign = (fl % 2 == 0) ? 1 : -1;
  return {std::lgamma(x), sign};
}

bool is_small_nonneg_integer(double a) {
  return a >= 0.0 && a == std::floor(a) && a <= 256.0;
}

// Rounded products can leave a negative zero behind; store a plain zero.
double canonical(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

FractionalOrder::FractionalOrder(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::domain_error("fractional order must lie in (0, 1], got " +
                            std::to_string(mu));
  }
}

double log_gamma(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw std::domain_error("log_gamma requires finite x > 0, got " +
                            std::to_string(x));
  }
  return std::lgamma(x);
}

double falling_factorial(double t, double alpha) {
  if (!std::isfinite(t) || !std::isfinite(alpha)) {
    throw std::domain_error("falling_factorial requires finite arguments");
  }
  if (alpha == 0.0) {
    return 1.0;
  }
  if (is_small_nonneg_integer(alpha)) {
    double prod = 1.0;
    for (int j = 0; j < static_cast<int>(alpha); ++j) {
      prod *= t - j;
    }
    return prod;
  }
  const auto [ln_num, sign_num] = log_abs_gamma(t + 1.0);
  const auto [ln_den, sign_den] = log_abs_gamma(t - alpha + 1.0);
  return sign_num * sign_den * std::exp(ln_num - ln_den);
}

double rising_factorial(double t, double alpha) {
  if (!std::isfinite(t) || !std::isfinite(alpha)) {
    throw std::domain_error("rising_factorial requires finite arguments");
  }
  if (alpha == 0.0) {
    return 1.0;
  }
  if (is_small_nonneg_integer(alpha)) {
    double prod = 1.0;
    for (int j = 0; j < static_cast<int>(alpha); ++j) {
      prod *= t + j;
    }
    return prod;
  }
  const auto [ln_num, sign_num] = log_abs_gamma(t + alpha);
  const auto [ln_den, sign_den] = log_abs_gamma(t);
  return sign_num * sign_den * std::exp(ln_num - ln_den);
}

ToeplitzKernel gl_weights(FractionalOrder mu, int m) {
  if (m < 0) {
    throw std::invalid_argument("kernel length must be non-negative");
  }
  std::vector<double> w(static_cast<std::size_t>(m) + 1);
  w[0] = 1.0;
  for (int s = 1; s <= m; ++s) {
    w[s] = canonical(w[s - 1] * (s - 1 - mu.value()) / s);
  }
  return {KernelKind::GlWeights, mu, std::move(w)};
}

ToeplitzKernel rl_sum_kernel(FractionalOrder mu, int m) {
  if (m < 0) {
    throw std::invalid_argument("kernel length must be non-negative");
  }
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  c[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    c[k] = c[k - 1] * (k + mu.value() - 1) / k;
  }
  return {KernelKind::RlSumKernel, mu, std::move(c)};
}

ToeplitzKernel rl_diff_kernel(FractionalOrder mu, int m) {
  if (m < 0) {
    throw std::invalid_argument("kernel length must be non-negative");
  }
  std::vector<double> e(static_cast<std::size_t>(m) + 1);
  if (mu.value() == 1.0) {
    // The (1-mu) sum kernel degenerates at mu = 1; the limit is the exact
    // backward difference.
    e[0] = 1.0;
    if (m >= 1) e[1] = -1.0;
    return {KernelKind::RlDiffKernel, mu, std::move(e)};
  }
  const ToeplitzKernel d = rl_sum_kernel(FractionalOrder(1.0 - mu.value()), m);
  e[0] = d[0];
  for (int k = 1; k <= m; ++k) {
    e[k] = canonical(d[k] - d[k - 1]);
  }
  return {KernelKind::RlDiffKernel, mu, std::move(e)};
}

}  // namespace dfsl
