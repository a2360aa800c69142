#include "holeprobe/synth.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "holeprobe/errors.hpp"
#include "random_stream.hpp"

namespace holeprobe::synth {

namespace {

// Stream keys so that the parts of a corpus draw from independent streams.
enum Part : std::uint64_t { kRing = 1, kInside = 2, kOutside = 3 };

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on portable uniforms.
double gaussian(std::mt19937_64& rng) {
  const double u = 1.0 - uniform(rng);
  const double v = uniform(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

void jitter(std::vector<double>& row, double noise, std::mt19937_64& rng) {
  if (noise <= 0.0) return;
  for (auto& x : row) x += noise * gaussian(rng);
}

struct Direction {
  std::array<double, 3> center;
  std::array<double, 3> e1;  // in the x-z plane
  std::array<double, 3> e2;  // +y
};

Direction direction(double phi) {
  return {{std::sin(phi), 0.0, std::cos(phi)}, {std::cos(phi), 0.0, -std::sin(phi)}, {0.0, 1.0, 0.0}};
}

// Point at angular distance `angle` from the centre, at bearing `bearing`.
std::vector<double> on_cap(const Direction& d, double angle, double bearing) {
  std::vector<double> p(3);
  for (std::size_t k = 0; k < 3; ++k) {
    p[k] = std::cos(angle) * d.center[k] +
           std::sin(angle) * (std::cos(bearing) * d.e1[k] + std::sin(bearing) * d.e2[k]);
  }
  return p;
}

// Uniform over the spherical cap of angular radius `radius`.
std::vector<double> in_cap(std::mt19937_64& rng, const Direction& d, double radius) {
  const double c = 1.0 - uniform(rng) * (1.0 - std::cos(radius));
  return on_cap(d, std::acos(c), 2.0 * std::numbers::pi * uniform(rng));
}

void check_noise(double noise) {
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw InputError("noise must be finite and non-negative");
}

}  // namespace

PointCloud circle(std::size_t count, double radius, double noise, std::uint64_t seed, double center_x,
                  double center_y) {
  if (count == 0) throw InputError("circle needs at least one point");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  check_noise(noise);
  auto rng = detail::stream(seed, kRing, 0);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < count; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    std::vector<double> row{center_x + radius * std::cos(a), center_y + radius * std::sin(a)};
    jitter(row, noise, rng);
    rows.push_back(std::move(row));
  }
  return PointCloud::from_rows(rows);
}

PointCloud figure_eight(std::size_t count, double radius, double noise, std::uint64_t seed) {
  if (count < 6 || count % 2 != 0) throw InputError("figure-eight needs an even count of at least 6");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  check_noise(noise);
  auto rng = detail::stream(seed, kRing, 0);
  const std::size_t m = count / 2;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  std::vector<std::vector<double>> rows;
  for (double cx : {-radius, radius}) {
    for (std::size_t k = 0; k < m; ++k) {
      const double a = step / 2 + step * static_cast<double>(k);
      std::vector<double> row{cx + radius * std::cos(a), radius * std::sin(a)};
      jitter(row, noise, rng);
      rows.push_back(std::move(row));
    }
  }
  return PointCloud::from_rows(rows);
}

PlantedHoleCorpus planted_holes(const PlantedHoleOptions& o) {
  if (o.holes == 0 || o.ring_points < 3) throw InputError("planted holes need at least one ring of 3 points");
  if (!(o.hole_radius > 0.0)) throw InputError("hole radius must be positive");
  const double spacing = 2.4 * o.hole_radius;
  // Angular reach of the outermost ring from +z, plus the far cluster's cap.
  const double reach = spacing * static_cast<double>(o.holes - 1) / 2.0 + 1.5 * o.hole_radius;
  if (reach >= std::numbers::pi) throw InputError("holes do not fit on the sphere; reduce count or radius");
  check_noise(o.noise);

  std::vector<Direction> centers;
  for (std::size_t h = 0; h < o.holes; ++h) {
    centers.push_back(direction((static_cast<double>(h) - static_cast<double>(o.holes - 1) / 2.0) * spacing));
  }

  PlantedHoleCorpus corpus;
  auto rng = detail::stream(o.seed, kRing, 0);
  std::vector<std::vector<double>> rows;
  for (const auto& c : centers) {
    for (std::size_t k = 0; k < o.ring_points; ++k) {
      const double bearing = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(o.ring_points);
      auto row = on_cap(c, o.hole_radius, bearing);
      jitter(row, o.noise, rng);
      rows.push_back(std::move(row));
    }
  }
  corpus.base = PointCloud::from_rows(rows);

  rng = detail::stream(o.seed, kInside, 0);
  rows.clear();
  for (std::size_t i = 0; i < o.inside; ++i) rows.push_back(in_cap(rng, centers[i % o.holes], 0.5 * o.hole_radius));
  corpus.inside = PointCloud::from_rows(rows);

  rng = detail::stream(o.seed, kOutside, 0);
  rows.clear();
  const Direction far = direction(std::numbers::pi);
  for (std::size_t i = 0; i < o.outside; ++i) rows.push_back(in_cap(rng, far, 0.5 * o.hole_radius));
  corpus.outside = PointCloud::from_rows(rows);
  return corpus;
}

const std::vector<std::string>& shape_names() {
  static const std::vector<std::string> names{"circle", "figure-eight", "planted-holes"};
  return names;
}

}  // namespace holeprobe::synth
