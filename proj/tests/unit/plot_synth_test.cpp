#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "holeprobe/errors.hpp"
#include "holeprobe/persistence.hpp"
#include "holeprobe/plot.hpp"
#include "holeprobe/synth.hpp"

using namespace holeprobe;

namespace {

std::size_t occurrences(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
  return n;
}

PersistenceBar finite_bar(double b, double d) {
  PersistenceBar bar;
  bar.birth = b;
  bar.death = d;
  bar.death_simplex = FiltrationSimplex{};
  return bar;
}

double norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double angle(std::span<const double> x, std::span<const double> y) {
  double dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  return std::acos(std::clamp(dot / (norm(x) * norm(y)), -1.0, 1.0));
}

}  // namespace

TEST_SUITE("plot") {
  TEST_CASE("empty diagram has axes and diagonal only") {
    const auto svg = plot::diagram_svg({}, {});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(occurrences(svg, "class=\"diagonal\"") == 1);
    CHECK(occurrences(svg, "<circle") == 0);
    CHECK(occurrences(svg, "class=\"threshold\"") == 0);
  }

  TEST_CASE("one circle per bar") {
    PersistenceDiagram d;
    d.bars = {finite_bar(1, 1.5), finite_bar(0.5, 0.7)};
    PersistenceBar open;
    open.birth = 0.9;
    d.bars.push_back(open);
    plot::PlotSpec spec;
    spec.highlight = {1};
    const auto svg = plot::diagram_svg(d, spec);
    CHECK(occurrences(svg, "<circle") == 3);
    CHECK(occurrences(svg, "class=\"bar highlight\"") == 1);
    CHECK(occurrences(svg, "class=\"bar infinite\"") == 1);
    spec.highlight = {3};
    CHECK_THROWS_AS(plot::diagram_svg(d, spec), InputError);
  }

  TEST_CASE("threshold draws a dashed line") {
    PersistenceDiagram d;
    d.bars = {finite_bar(1, 1.5)};
    plot::PlotSpec spec;
    spec.threshold = 0.2;
    const auto svg = plot::diagram_svg(d, spec);
    const auto pos = svg.find("class=\"threshold\"");
    REQUIRE(pos != std::string::npos);
    const auto tag_start = svg.rfind('<', pos);
    const auto tag = svg.substr(tag_start, svg.find('>', pos) - tag_start);
    CHECK(tag.find("stroke-dasharray") != std::string::npos);
    CHECK(plot::diagram_svg(d, spec) == svg);
  }

  TEST_CASE("barcode, histogram and box plot") {
    MixupBarcode barcode;
    MixupBar bar;
    bar.base = finite_bar(1, 2);
    bar.image_death = 1.5;
    bar.mixup = 0.5;
    barcode.bars = {bar, bar};
    CHECK(occurrences(plot::barcode_svg(barcode, {}), "<svg") == 1);
    const std::vector<double> a{0, 0.5, 1, 1}, b{0, 0, 0.1};
    const auto hist = plot::histogram_svg(a, b);
    CHECK(hist.find("class A") != std::string::npos);
    CHECK(hist.find("class B") != std::string::npos);
    const auto box = plot::boxplot_svg(a, b, "inside", "outside");
    CHECK(box.find("inside") != std::string::npos);
    CHECK(plot::histogram_svg({}, {}).find("</svg>") != std::string::npos);
  }
}

TEST_SUITE("synth") {
  TEST_CASE("circle") {
    const auto c = synth::circle(8);
    REQUIRE(c.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(norm(c.point(i)) == doctest::Approx(1.0));
      CHECK(std::atan2(c.point(i)[1], c.point(i)[0]) ==
            doctest::Approx(std::remainder(2 * std::numbers::pi * static_cast<double>(i) / 8, 2 * std::numbers::pi)));
    }
    const auto noisy = synth::circle(8, 2.0, 0.01, 3, 1.0, 1.0);
    CHECK(noisy == synth::circle(8, 2.0, 0.01, 3, 1.0, 1.0));
    CHECK(noisy != synth::circle(8, 2.0, 0.01, 4, 1.0, 1.0));
  }

  TEST_CASE("figure eight") {
    const auto f = synth::figure_eight(16);
    REQUIRE(f.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
      const double cx = i < 8 ? -1.0 : 1.0;
      CHECK(std::hypot(f.point(i)[0] - cx, f.point(i)[1]) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(synth::figure_eight(7), InputError);
  }

  TEST_CASE("planted holes") {
    synth::PlantedHoleOptions options;
    options.seed = 5;
    const auto corpus = synth::planted_holes(options);
    CHECK(corpus.base.size() == options.holes * options.ring_points);
    CHECK(corpus.inside.size() == options.inside);
    CHECK(corpus.outside.size() == options.outside);
    CHECK(corpus.base.dim() == 3);
    for (std::size_t i = 0; i < corpus.base.size(); ++i) CHECK(std::abs(norm(corpus.base.point(i)) - 1.0) < 0.05);
    const std::vector<double> south{0, 0, -1};
    for (std::size_t i = 0; i < corpus.outside.size(); ++i)
      CHECK(angle(corpus.outside.point(i), south) <= options.hole_radius / 2 + 1e-12);
    const auto again = synth::planted_holes(options);
    CHECK(again.base == corpus.base);
    CHECK(again.inside == corpus.inside);
    options.noise = 0.0;
    const auto exact = synth::planted_holes(options);
    for (std::size_t i = 0; i < exact.base.size(); ++i) CHECK(norm(exact.base.point(i)) == doctest::Approx(1.0));
    options.holes = 9;
    CHECK_THROWS_AS(synth::planted_holes(options), InputError);
  }

  TEST_CASE("shape names") {
    CHECK(synth::shape_names() == std::vector<std::string>{"circle", "figure-eight", "planted-holes"});
  }
}
