#pragma once

#include <vector>

#include "skipq/grid.hpp"

namespace skipq::test {

// Pearson chi-square statistic against a uniform expectation.
inline double chi_square(const std::vector<int>& counts, double expected) {
  double stat = 0.0;
  for (int c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

// 1 x n corridor: start on the left, goal on the right, no cliffs.
inline GridSpec corridor(int n, int step_limit = 100) {
  return GridSpec("corridor", 1, n, {0, 0}, {{0, n - 1}}, {}, step_limit);
}

}  // namespace skipq::test
