#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "holeprobe/metricspace.hpp"
#include "holeprobe/mixup.hpp"
#include "holeprobe/persistence.hpp"
#include "holeprobe/stats.hpp"

namespace holeprobe::io {

/// Shortest decimal text that reads back as the same double; "inf"/"-inf"/"nan"
/// for non-finite values.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Points from CSV (one row per point) or from the binary layout: magic
/// "HPROBE01", u64 n, u64 dim, then n * dim float64, all little-endian. The
/// format is chosen by the magic. An empty file yields an empty cloud.
PointCloud read_points(const std::filesystem::path& path);
PointCloud parse_points_csv(std::string_view text);
PointCloud parse_points_binary(std::string_view bytes);
std::string points_csv(const PointCloud& cloud);
std::string points_binary(const PointCloud& cloud);

/// Full square matrix, or its lower triangle with or without the diagonal.
DissimilarityMatrix read_matrix(const std::filesystem::path& path);
DissimilarityMatrix parse_matrix_csv(std::string_view text);

/// Rows of numbers with no shape check (added rows of a precomputed matrix).
std::vector<std::vector<double>> parse_rows_csv(std::string_view text);

/// JSON array of bars. Infinite deaths are written as null. Representatives
/// are included only when `with_cycles` is set.
std::string diagram_json(const PersistenceDiagram& diagram, bool with_cycles);
PersistenceDiagram parse_diagram_json(std::string_view text);

/// Header "birth,death,persistence".
std::string diagram_csv(const PersistenceDiagram& diagram);

std::string mixup_json(const MixupBarcode& barcode);
MixupBarcode parse_mixup_json(std::string_view text);
std::string mixup_summary(const MixupBarcode& barcode);

std::string config_json(const ExperimentConfig& config);
std::string experiment_json(const ExperimentResult& result);
/// Header "iteration,total_a,total_b".
std::string totals_csv(const ExperimentResult& result);
/// Header "index,birth,death,persistence,avg_mixup_a,avg_mixup_b".
std::string per_hole_csv(const ExperimentResult& result);

}  // namespace holeprobe::io
