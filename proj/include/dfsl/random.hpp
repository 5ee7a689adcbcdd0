#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace dfsl {

/// Name of the generator + mapping, recorded in reports so results can be
/// reproduced elsewhere.
inline constexpr const char* kRngName = "mt19937_64-u53";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic uniform(-1, 1) stream. The top 53 bits of each mt19937_64
/// draw are scaled directly, so the sequence is identical on every platform
/// for a given seed (distribution classes from <random> are not portable).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = next();
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dfsl
