#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "holeprobe/metricspace.hpp"

namespace fixtures {

using holeprobe::DissimilarityMatrix;
using holeprobe::PointCloud;

inline PointCloud unit_square() {
  return PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline PointCloud square_center() { return PointCloud::from_rows({{0.5, 0.5}}); }

// Two circles of radius 1 centred at (-1, 0) and (1, 0), touching at the
// origin, 8 points each at angles pi/8 + k pi/4. Points 0-7 lie on the left
// circle, 8-15 on the right one, each in angular order.
inline PointCloud figure_eight() {
  std::vector<std::vector<double>> rows;
  for (double cx : {-1.0, 1.0})
    for (int k = 0; k < 8; ++k) {
      const double a = std::numbers::pi / 8 + 2 * std::numbers::pi * k / 8;
      rows.push_back({cx + std::cos(a), std::sin(a)});
    }
  return PointCloud::from_rows(rows);
}

// Symmetric matrix with entries in (0, 2]. With `coarse`, entries are drawn
// from a small grid so that ties between values are common.
inline DissimilarityMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool coarse) {
  std::uniform_real_distribution<double> uniform(0.0, 2.0);
  std::uniform_int_distribution<int> grid(1, 8);
  DissimilarityMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d.set(i, j, coarse ? grid(rng) * 0.25 : uniform(rng));
  return d;
}

}  // namespace fixtures
