#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "holeprobe/metricspace.hpp"
#include "holeprobe/stats.hpp"

namespace holeprobe {

struct InputRecord {
  std::string path;
  std::string sha256;

  friend bool operator==(const InputRecord&, const InputRecord&) = default;
};

/// Everything needed to rerun an experiment. Written next to its outputs; no
/// timestamps or host details, so reruns reproduce it byte for byte.
struct RunManifest {
  std::string tool = "holeprobe";
  std::string version;
  InputRecord base;
  InputRecord class_a;
  InputRecord class_b;
  Metric metric = Metric::cosine;
  std::optional<double> truncation;
  ExperimentConfig config;
  std::string output;

  std::string to_json() const;

  /// Throws InputError on malformed JSON or out-of-range values.
  static RunManifest from_json(std::string_view text);

  /// Recomputes every input digest; throws InputError naming the first file
  /// that changed.
  void verify_inputs() const;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

InputRecord record_input(const std::string& path);

std::string metric_name(Metric metric);
Metric parse_metric(std::string_view name);

}  // namespace holeprobe
