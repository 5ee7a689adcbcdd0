#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfsl {

/// Uniform integer lattice {start, ..., end} with step h. The nabla family
/// requires h = 1; the delta family accepts any positive h.
struct Grid {
  int start;
  int end;
  double h;

  Grid(int start_, int end_, double h_ = 1.0) : start(start_), end(end_), h(h_) {
    if (end < start) {
      throw std::invalid_argument("grid end " + std::to_string(end) +
                                  " precedes start " + std::to_string(start));
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::invalid_argument("grid step must be positive and finite");
    }
  }

  int size() const noexcept { return end - start + 1; }

  /// Interior lattice {a+1, ..., b-1} of [a, b], the domain of the nabla
  /// operators. Needs b >= a + 2 so the interior is non-empty.
  static Grid interior(int a, int b) {
    if (b < a + 2) {
      throw std::invalid_argument("interval [" + std::to_string(a) + ", " +
                                  std::to_string(b) +
                                  "] has an empty interior");
    }
    return Grid(a + 1, b - 1, 1.0);
  }

  /// Lattice {0, ..., n} with step h, the domain of the delta operators.
  static Grid range(int n, double h = 1.0) {
    if (n < 0) {
      throw std::invalid_argument("grid endpoint must be non-negative");
    }
    return Grid(0, n, h);
  }
};

}  // namespace dfsl
