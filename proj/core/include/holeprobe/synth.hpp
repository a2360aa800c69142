#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "holeprobe/metricspace.hpp"

namespace holeprobe::synth {

/// `count` points at angles 2 pi k / count on a circle, plus Gaussian noise
/// of standard deviation `noise` per coordinate.
PointCloud circle(std::size_t count, double radius = 1.0, double noise = 0.0, std::uint64_t seed = 0,
                  double center_x = 0.0, double center_y = 0.0);

/// Two circles of `radius` touching at the origin, count / 2 points each at
/// angles pi / m + 2 pi k / m (m = count / 2). Points of the left circle come
/// first. `count` must be even and at least 6.
PointCloud figure_eight(std::size_t count = 16, double radius = 1.0, double noise = 0.0, std::uint64_t seed = 0);

struct PlantedHoleOptions {
  std::size_t holes = 2;
  std::size_t ring_points = 30;
  double hole_radius = 0.7853981633974483;  // angular, radians
  std::size_t inside = 40;
  std::size_t outside = 40;
  double noise = 0.005;
  std::uint64_t seed = 0;
};

/// Unit vectors in three dimensions before noise is added. Each hole is a ring of points at angular
/// distance `hole_radius` from its centre direction; centres are spread along
/// the x-z great circle around +z. `inside` points fall within half the
/// radius of a centre (cycling over holes); `outside` points cluster around -z.
struct PlantedHoleCorpus {
  PointCloud base;
  PointCloud inside;
  PointCloud outside;
};

PlantedHoleCorpus planted_holes(const PlantedHoleOptions& options = {});

/// Names accepted by the CLI: circle, figure-eight, planted-holes.
const std::vector<std::string>& shape_names();

}  // namespace holeprobe::synth
