#include "holeprobe/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "holeprobe/errors.hpp"
#include "holeprobe/parallel.hpp"

namespace holeprobe {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (coords_.empty()) {
    dim_ = dim;
    return;
  }
  if (dim_ == 0) throw InputError("point dimension must be at least 1");
  if (coords_.size() % dim_ != 0) {
    throw InputError("coordinate count " + std::to_string(coords_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw InputError("non-finite coordinate at point " + std::to_string(k / dim_));
    }
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " coordinates, expected " + std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(dim, std::move(coords));
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(dim_, std::move(coords));
}

DissimilarityMatrix DissimilarityMatrix::from_dense(std::size_t n, std::vector<double> entries) {
  if (entries.size() != n * n) {
    throw InputError("matrix has " + std::to_string(entries.size()) + " entries, expected " +
                     std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i * n + i] != 0.0) {
      throw InputError("nonzero diagonal entry at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = entries[i * n + j];
      const double b = entries[j * n + i];
      if (!std::isfinite(a) || a < 0.0) {
        throw InputError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") is negative or not finite");
      }
      if (a != b) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
  DissimilarityMatrix m;
  m.n_ = n;
  m.entries_ = std::move(entries);
  return m;
}

double DissimilarityMatrix::max_entry() const noexcept {
  double best = 0.0;
  for (double v : entries_) best = std::max(best, v);
  return best;
}

DissimilarityMatrix DissimilarityMatrix::leading_block(std::size_t k) const {
  DissimilarityMatrix block(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_), k,
                block.entries_.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return block;
}

namespace {

void require_same_length(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InputError("vector length mismatch: " + std::to_string(u.size()) + " vs " +
                     std::to_string(v.size()));
  }
}

}  // namespace

double cosine_dissimilarity(std::span<const double> u, std::span<const double> v) {
  require_same_length(u, v);
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (!std::isfinite(dot) || !std::isfinite(uu) || !std::isfinite(vv)) {
    throw InputError("non-finite value in cosine dissimilarity");
  }
  if (uu == 0.0 || vv == 0.0) throw InputError("zero-norm vector has no cosine dissimilarity");
  const double value = 1.0 - dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(value, 0.0, 2.0);
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  require_same_length(u, v);
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double diff = u[k] - v[k];
    sum += diff * diff;
  }
  const double value = std::sqrt(sum);
  if (!std::isfinite(value)) throw InputError("non-finite value in euclidean distance");
  return value;
}

double dissimilarity(Metric metric, std::span<const double> u, std::span<const double> v) {
  return metric == Metric::cosine ? cosine_dissimilarity(u, v) : euclidean_distance(u, v);
}

DissimilarityMatrix dissimilarity_matrix(const PointCloud& cloud, Metric metric, unsigned workers) {
  const std::size_t n = cloud.size();
  if (n == 0) throw InputError("point cloud is empty");
  if (metric == Metric::cosine) {
    for (std::size_t i = 0; i < n; ++i) {
      double norm = 0.0;
      for (double x : cloud.point(i)) norm += x * x;
      if (norm == 0.0) throw InputError("point " + std::to_string(i) + " has zero norm");
    }
  }
  DissimilarityMatrix d(n);
  // Row i fills the upper triangle (i, j > i) and its mirror; rows touch
  // disjoint cells so they can run concurrently.
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      try {
        d.set(i, j, dissimilarity(metric, cloud.point(i), cloud.point(j)));
      } catch (const InputError& e) {
        throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) + ": " +
                         e.what());
      }
    }
  });
  return d;
}

double enclosing_radius(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  if (n <= 1) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = d.row(i);
    best = std::min(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

}  // namespace holeprobe
