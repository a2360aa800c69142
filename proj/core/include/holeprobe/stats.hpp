#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "holeprobe/filtration.hpp"
#include "holeprobe/metricspace.hpp"
#include "holeprobe/mixup.hpp"
#include "holeprobe/persistence.hpp"

namespace holeprobe {

struct ExperimentConfig {
  std::size_t iterations = 100;
  double sample_fraction = 0.10;
  std::uint64_t seed = 0;
  double persistence_threshold = 0.2;
  std::size_t permutations = 10000;
  /// Average a hole's mixup over the iterations where it is non-zero only.
  bool average_nonzero_only = false;
  unsigned workers = 0;  // 0 = automatic

  /// Throws InputError when a field is out of range.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// The base cloud with its complex and diagram, computed once and shared by
/// every iteration of an experiment. Immutable after construction.
class BaseModel {
 public:
  BaseModel(PointCloud cloud, Metric metric = Metric::cosine, ComplexOptions options = {},
            unsigned workers = 0);

  const PointCloud& cloud() const noexcept { return cloud_; }
  Metric metric() const noexcept { return metric_; }
  const FilteredComplex& complex() const noexcept { return complex_; }
  const PersistenceDiagram& diagram() const noexcept { return diagram_; }
  std::size_t finite_bar_count() const noexcept { return finite_count_; }

  /// Mixup barcode of the base against base + `added`. Only the added rows of
  /// the combined matrix are computed.
  MixupBarcode mixup(const PointCloud& added) const;

 private:
  PointCloud cloud_;
  Metric metric_;
  std::uint64_t simplex_cap_;
  FilteredComplex complex_;
  PersistenceDiagram diagram_;
  std::size_t finite_count_ = 0;
};

/// Content digest of a point cloud; identifies a class when deriving random
/// streams, so identical class files draw identical samples.
std::uint64_t class_id(const PointCloud& points);

/// floor(fraction * class_size); throws InputError when that is zero.
std::size_t sample_size(std::size_t class_size, double fraction);

/// Sorted indices of a sample without replacement, drawn from the stream
/// keyed by (seed, class id, iteration).
std::vector<std::size_t> sample_indices(std::size_t class_size, std::size_t count, std::uint64_t seed,
                                        std::uint64_t class_key, std::uint64_t iteration);

struct SubsampleRun {
  std::vector<double> totals;                  // one per iteration
  std::vector<std::vector<double>> bar_mixups;  // [finite bar][iteration], base order
};

/// Adds a fresh sample of `class_points` to the base in every iteration.
/// Iterations run concurrently; results are in iteration order and do not
/// depend on the worker count.
SubsampleRun run_subsamples(const BaseModel& base, const PointCloud& class_points,
                            const ExperimentConfig& config);

std::vector<double> subsampled_total_mixup(const BaseModel& base, const PointCloud& class_points,
                                           const ExperimentConfig& config);

/// Two-sided permutation test on the absolute difference of means, with the
/// add-one correction: p = (1 + #{permuted diff >= observed}) / (1 + permutations).
double permutation_test(std::span<const double> xs, std::span<const double> ys, std::size_t permutations,
                        std::uint64_t seed, unsigned workers = 0);

/// Bars with persistence strictly above `threshold`, in their original order.
PersistenceDiagram filter_persistent(const PersistenceDiagram& diagram, double threshold);

struct HoleAverage {
  std::size_t index = 0;  // position in the base diagram
  PersistenceBar bar;
  double average_mixup = 0.0;
};

/// Mean mixup of every finite base bar with persistence above the threshold.
std::vector<HoleAverage> per_hole_average_mixup(const BaseModel& base, const SubsampleRun& run,
                                                double threshold, bool nonzero_only = false);

std::vector<HoleAverage> per_hole_average_mixup(const BaseModel& base, const PointCloud& class_points,
                                                const ExperimentConfig& config);

struct PerHoleRow {
  std::size_t index = 0;
  double birth = 0.0;
  double death = 0.0;
  double persistence = 0.0;
  double avg_mixup_a = 0.0;
  double avg_mixup_b = 0.0;

  friend bool operator==(const PerHoleRow&, const PerHoleRow&) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<double> totals_a;
  std::vector<double> totals_b;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double observed_diff = 0.0;
  double p_value = 1.0;
  std::vector<PerHoleRow> per_hole;
  std::vector<std::vector<double>> bar_mixups_a;  // [finite bar][iteration]
  std::vector<std::vector<double>> bar_mixups_b;

  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

double mean(std::span<const double> values);

ExperimentResult run_experiment(const BaseModel& base, const PointCloud& class_a, const PointCloud& class_b,
                                const ExperimentConfig& config);

}  // namespace holeprobe
