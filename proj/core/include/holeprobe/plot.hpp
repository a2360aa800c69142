#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holeprobe/mixup.hpp"
#include "holeprobe/persistence.hpp"

namespace holeprobe::plot {

struct PlotSpec {
  std::vector<std::size_t> highlight;  // bar indices drawn with class "highlight"
  std::optional<double> threshold;     // dashed line d = b + threshold
  int width = 480;
  int height = 480;
};

/// Persistence diagram: axes, the diagonal, one circle per bar at
/// (birth, death). Bars with infinite death sit on the top edge. Throws
/// InputError on an out-of-range highlight index.
std::string diagram_svg(const PersistenceDiagram& diagram, const PlotSpec& spec);

/// One row per bar: the base interval [b, d] with the image interval [b, d']
/// drawn over it.
std::string barcode_svg(const MixupBarcode& barcode, const PlotSpec& spec);

/// Overlaid histograms of two samples on shared bins.
std::string histogram_svg(std::span<const double> a, std::span<const double> b, std::string_view label_a = "class A",
                          std::string_view label_b = "class B", std::size_t bins = 20);

/// Box plots (quartiles, 1.5 IQR whiskers) of two samples.
std::string boxplot_svg(std::span<const double> a, std::span<const double> b, std::string_view label_a = "class A",
                        std::string_view label_b = "class B");

}  // namespace holeprobe::plot
