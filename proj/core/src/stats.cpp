#include "holeprobe/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "holeprobe/digest.hpp"
#include "holeprobe/errors.hpp"
#include "holeprobe/parallel.hpp"
#include "random_stream.hpp"

namespace holeprobe {

namespace {

// Stream namespace for permutation relabelings; class streams use class ids.
constexpr std::uint64_t kPermutationStream = 0x7065726d75746174ULL;

constexpr std::size_t kPermutationBlock = 256;

}  // namespace

void ExperimentConfig::validate() const {
  if (iterations == 0) throw InputError("iterations must be at least 1");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw InputError("sample fraction must lie in (0, 1]");
  }
  if (!(persistence_threshold >= 0.0) || !std::isfinite(persistence_threshold)) {
    throw InputError("persistence threshold must be finite and non-negative");
  }
  if (permutations == 0) throw InputError("permutations must be at least 1");
}

BaseModel::BaseModel(PointCloud cloud, Metric metric, ComplexOptions options, unsigned workers)
    : cloud_(std::move(cloud)), metric_(metric), simplex_cap_(options.simplex_cap) {
  if (cloud_.empty()) throw InputError("base cloud is empty");
  options.max_dim = 2;
  complex_ = build_complex(dissimilarity_matrix(cloud_, metric_, workers), options);
  diagram_ = reduce_h1(complex_);
  finite_count_ = diagram_.finite_count();
}

MixupBarcode BaseModel::mixup(const PointCloud& added) const {
  auto pq = combined_matrix(complex_.matrix(), cloud_, added, metric_);
  const auto combined = build_combined_complex(std::move(pq), complex_, simplex_cap_);
  return image_persistence_h1(complex_, combined, diagram_);
}

std::uint64_t class_id(const PointCloud& points) {
  std::vector<std::uint64_t> words;
  words.reserve(points.coords().size() + 1);
  words.push_back(points.dim());
  for (double x : points.coords()) words.push_back(std::bit_cast<std::uint64_t>(x));
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& w : words) w = __builtin_bswap64(w);
  }
  const std::string hex = sha256_hex(std::as_bytes(std::span(words)));
  return std::stoull(hex.substr(0, 16), nullptr, 16);
}

std::size_t sample_size(std::size_t class_size, double fraction) {
  // The relative nudge keeps products such as 0.29 * 100 from rounding down.
  const auto k = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(class_size) * (1.0 + 1e-12)));
  if (k == 0) {
    throw InputError("empty sample: fraction " + std::to_string(fraction) + " of " +
                     std::to_string(class_size) + " points");
  }
  return std::min(k, class_size);
}

std::vector<std::size_t> sample_indices(std::size_t class_size, std::size_t count, std::uint64_t seed,
                                        std::uint64_t class_key, std::uint64_t iteration) {
  auto rng = detail::stream(seed, class_key, iteration);
  std::vector<std::size_t> indices(class_size);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  count = std::min(count, class_size);
  detail::partial_shuffle(rng, indices, count);
  indices.resize(count);
  std::sort(indices.begin(), indices.end());
  return indices;
}

SubsampleRun run_subsamples(const BaseModel& base, const PointCloud& class_points,
                            const ExperimentConfig& config) {
  config.validate();
  if (class_points.empty()) throw InputError("class has no points");
  if (class_points.dim() != base.cloud().dim()) {
    throw InputError("dimensionality mismatch: base has " + std::to_string(base.cloud().dim()) +
                     " coordinates, class has " + std::to_string(class_points.dim()));
  }
  const std::size_t k = sample_size(class_points.size(), config.sample_fraction);
  const std::uint64_t key = class_id(class_points);

  SubsampleRun run;
  run.totals.assign(config.iterations, 0.0);
  run.bar_mixups.assign(base.finite_bar_count(), std::vector<double>(config.iterations, 0.0));
  parallel_for(config.iterations, config.workers, [&](std::size_t i) {
    const auto indices = sample_indices(class_points.size(), k, config.seed, key, i);
    const auto barcode = base.mixup(class_points.subset(indices));
    run.totals[i] = barcode.total_mixup;
    for (std::size_t b = 0; b < barcode.bars.size(); ++b) run.bar_mixups[b][i] = barcode.bars[b].mixup;
  });
  return run;
}

std::vector<double> subsampled_total_mixup(const BaseModel& base, const PointCloud& class_points,
                                           const ExperimentConfig& config) {
  return run_subsamples(base, class_points, config).totals;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double permutation_test(std::span<const double> xs, std::span<const double> ys, std::size_t permutations,
                        std::uint64_t seed, unsigned workers) {
  if (xs.empty() || ys.empty()) throw InputError("permutation test needs two non-empty samples");
  if (permutations == 0) throw InputError("permutations must be at least 1");

  std::vector<double> pool(xs.begin(), xs.end());
  pool.insert(pool.end(), ys.begin(), ys.end());
  const double observed = std::abs(mean(xs) - mean(ys));
  double scale = 0.0;
  for (double v : pool) scale = std::max(scale, std::abs(v));
  // Relabelings that reproduce the observed split exactly must count even if
  // their sums round differently.
  const double cutoff = observed - 1e-12 * scale;

  const std::size_t blocks = (permutations + kPermutationBlock - 1) / kPermutationBlock;
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, workers, [&](std::size_t block) {
    std::vector<double> work(pool.size());
    const std::size_t end = std::min(permutations, (block + 1) * kPermutationBlock);
    for (std::size_t p = block * kPermutationBlock; p < end; ++p) {
      auto rng = detail::stream(seed, kPermutationStream, p);
      std::copy(pool.begin(), pool.end(), work.begin());
      detail::partial_shuffle(rng, work, xs.size());
      const std::span<const double> all(work);
      const double diff = std::abs(mean(all.first(xs.size())) - mean(all.subspan(xs.size())));
      if (diff >= cutoff) ++hits[block];
    }
  });
  const std::size_t count = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
  return static_cast<double>(1 + count) / static_cast<double>(1 + permutations);
}

PersistenceDiagram filter_persistent(const PersistenceDiagram& diagram, double threshold) {
  if (!(threshold >= 0.0)) throw InputError("persistence threshold must be non-negative");
  PersistenceDiagram out;
  out.homology_dim = diagram.homology_dim;
  std::copy_if(diagram.bars.begin(), diagram.bars.end(), std::back_inserter(out.bars),
               [&](const PersistenceBar& bar) { return bar.persistence() > threshold; });
  return out;
}

std::vector<HoleAverage> per_hole_average_mixup(const BaseModel& base, const SubsampleRun& run,
                                                double threshold, bool nonzero_only) {
  std::vector<HoleAverage> out;
  std::size_t finite = 0;
  const auto& bars = base.diagram().bars;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    if (!bars[i].finite()) continue;
    const std::size_t column = finite++;
    if (!(bars[i].persistence() > threshold)) continue;
    const auto& values = run.bar_mixups.at(column);
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : values) {
      if (nonzero_only && v == 0.0) continue;
      sum += v;
      ++count;
    }
    out.push_back({i, bars[i], count == 0 ? 0.0 : sum / static_cast<double>(count)});
  }
  return out;
}

std::vector<HoleAverage> per_hole_average_mixup(const BaseModel& base, const PointCloud& class_points,
                                                const ExperimentConfig& config) {
  return per_hole_average_mixup(base, run_subsamples(base, class_points, config),
                                config.persistence_threshold, config.average_nonzero_only);
}

ExperimentResult run_experiment(const BaseModel& base, const PointCloud& class_a, const PointCloud& class_b,
                                const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;

  auto run_a = run_subsamples(base, class_a, config);
  auto run_b = run_subsamples(base, class_b, config);
  result.mean_a = mean(run_a.totals);
  result.mean_b = mean(run_b.totals);
  result.observed_diff = std::abs(result.mean_a - result.mean_b);
  result.p_value = permutation_test(run_a.totals, run_b.totals, config.permutations, config.seed, config.workers);

  const auto holes_a = per_hole_average_mixup(base, run_a, config.persistence_threshold, config.average_nonzero_only);
  const auto holes_b = per_hole_average_mixup(base, run_b, config.persistence_threshold, config.average_nonzero_only);
  for (std::size_t h = 0; h < holes_a.size(); ++h) {
    const auto& bar = holes_a[h].bar;
    result.per_hole.push_back(
        {holes_a[h].index, bar.birth, bar.death, bar.persistence(), holes_a[h].average_mixup, holes_b[h].average_mixup});
  }
  result.totals_a = std::move(run_a.totals);
  result.totals_b = std::move(run_b.totals);
  result.bar_mixups_a = std::move(run_a.bar_mixups);
  result.bar_mixups_b = std::move(run_b.bar_mixups);
  return result;
}

}  // namespace holeprobe
