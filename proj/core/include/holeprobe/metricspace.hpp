#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace holeprobe {

/// Points stored row-major. Coordinates are finite and every point has the
/// same dimension; an empty cloud is representable so that callers can load
/// an empty "add" file, but most operations reject it.
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws InputError on ragged rows, non-finite coordinates or dim == 0.
  PointCloud(std::size_t dim, std::vector<double> coords);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Rows `indices` in the given order.
  PointCloud subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Dense symmetric matrix with zero diagonal. The triangle inequality is not
/// assumed; cosine dissimilarity is only a semimetric.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  /// Validates symmetry, zero diagonal, finiteness and non-negativity.
  static DissimilarityMatrix from_dense(std::size_t n, std::vector<double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::span<const double> entries() const noexcept { return entries_; }

  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) noexcept {
    entries_[i * n_ + j] = value;
    entries_[j * n_ + i] = value;
  }

  double max_entry() const noexcept;

  /// Leading k x k block.
  DissimilarityMatrix leading_block(std::size_t k) const;

  friend bool operator==(const DissimilarityMatrix&, const DissimilarityMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

enum class Metric { cosine, euclidean };

/// 1 - <u,v>/(|u||v|), clamped into [0, 2]. Throws InputError on length
/// mismatch, zero norm or non-finite input.
double cosine_dissimilarity(std::span<const double> u, std::span<const double> v);

double euclidean_distance(std::span<const double> u, std::span<const double> v);

double dissimilarity(Metric metric, std::span<const double> u, std::span<const double> v);

/// Pairwise dissimilarities of a (non-empty) cloud. Each entry is computed
/// once and mirrored, so the result is exactly symmetric. Rows are split
/// across `workers` threads (0 = hardware concurrency).
DissimilarityMatrix dissimilarity_matrix(const PointCloud& cloud, Metric metric = Metric::cosine,
                                         unsigned workers = 1);

/// min_i max_j d(i, j); 0 for a single point.
double enclosing_radius(const DissimilarityMatrix& d);

}  // namespace holeprobe
