#include "holeprobe/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string_view>

#include "holeprobe/errors.hpp"

namespace holeprobe::plot {

namespace {

constexpr double kMargin = 48.0;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", v);
  return buffer;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(int width, int height, double x_max, double y_max, double x_min = 0.0, double y_min = 0.0)
      : width_(width), height_(height), x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
    if (width < 100 || height < 100) throw InputError("canvas must be at least 100x100");
    out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + ' ' + std::to_string(height) +
           "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double x(double v) const { return kMargin + (v - x_min_) / (x_max_ - x_min_) * (width_ - 1.5 * kMargin); }
  double y(double v) const { return height_ - kMargin - (v - y_min_) / (y_max_ - y_min_) * (height_ - 1.5 * kMargin); }

  void line(double x1, double y1, double x2, double y2, std::string_view cls, std::string_view style) {
    out_ += "<line class=\"" + std::string(cls) + "\" x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
            "\" y2=\"" + num(y2) + "\" " + std::string(style) + "/>\n";
  }

  void rect(double x1, double y1, double x2, double y2, std::string_view cls, std::string_view style) {
    out_ += "<rect class=\"" + std::string(cls) + "\" x=\"" + num(std::min(x1, x2)) + "\" y=\"" + num(std::min(y1, y2)) +
            "\" width=\"" + num(std::abs(x2 - x1)) + "\" height=\"" + num(std::abs(y2 - y1)) + "\" " +
            std::string(style) + "/>\n";
  }

  void circle(double cx, double cy, double r, std::string_view cls, std::string_view style) {
    out_ += "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
            "\" " + std::string(style) + "/>\n";
  }

  void text(double tx, double ty, std::string_view content, std::string_view anchor = "middle") {
    out_ += "<text x=\"" + num(tx) + "\" y=\"" + num(ty) + "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" +
            std::string(anchor) + "\">" + escape(content) + "</text>\n";
  }

  // Axes with min and max tick labels.
  void axes(std::string_view x_label, std::string_view y_label) {
    line(x(x_min_), y(y_min_), x(x_max_), y(y_min_), "axis", "stroke=\"black\"");
    line(x(x_min_), y(y_min_), x(x_min_), y(y_max_), "axis", "stroke=\"black\"");
    text(x(x_min_), y(y_min_) + 14, label(x_min_));
    text(x(x_max_), y(y_min_) + 14, label(x_max_));
    text(x(x_min_) - 4, y(y_min_) + 4, label(y_min_), "end");
    text(x(x_min_) - 4, y(y_max_) + 4, label(y_max_), "end");
    text((x(x_min_) + x(x_max_)) / 2, height_ - 12, x_label);
    out_ += "<text x=\"14\" y=\"" + num((y(y_min_) + y(y_max_)) / 2) +
            "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
            num((y(y_min_) + y(y_max_)) / 2) + ")\">" + escape(y_label) + "</text>\n";
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  int width_, height_;
  double x_min_, x_max_, y_min_, y_max_;
  std::string out_;
};

double nice_max(double v) { return v > 0.0 ? v * 1.05 : 1.0; }

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_highlight(const PlotSpec& spec, std::size_t count) {
  for (auto i : spec.highlight) {
    if (i >= count) throw InputError("highlight index " + std::to_string(i) + " out of range (" + std::to_string(count) + " bars)");
  }
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& diagram, const PlotSpec& spec) {
  check_highlight(spec, diagram.bars.size());
  double top = 0.0;
  for (const auto& bar : diagram.bars) top = std::max({top, bar.birth, std::isfinite(bar.death) ? bar.death : 0.0});
  const double extent = nice_max(top);
  Canvas c(spec.width, spec.height, extent, extent);
  c.axes("birth", "death");
  c.line(c.x(0), c.y(0), c.x(extent), c.y(extent), "diagonal", "stroke=\"gray\"");
  if (spec.threshold) {
    const double t = *spec.threshold;
    if (t < extent) {
      c.line(c.x(0), c.y(t), c.x(extent - t), c.y(extent), "threshold",
             "stroke=\"red\" stroke-dasharray=\"6 4\"");
    }
  }
  const std::set<std::size_t> highlighted(spec.highlight.begin(), spec.highlight.end());
  for (std::size_t i = 0; i < diagram.bars.size(); ++i) {
    const auto& bar = diagram.bars[i];
    const bool infinite = !std::isfinite(bar.death);
    const bool hot = highlighted.count(i) != 0;
    std::string cls = hot ? "bar highlight" : "bar";
    if (infinite) cls += " infinite";
    c.circle(c.x(bar.birth), c.y(infinite ? extent : bar.death), hot ? 5 : 3.5, cls,
             hot ? "fill=\"red\"" : "fill=\"steelblue\"");
  }
  return c.finish();
}

std::string barcode_svg(const MixupBarcode& barcode, const PlotSpec& spec) {
  check_highlight(spec, barcode.bars.size());
  double top = 0.0;
  for (const auto& bar : barcode.bars) top = std::max(top, bar.base.death);
  const double rows = static_cast<double>(std::max<std::size_t>(barcode.bars.size(), 1));
  Canvas c(spec.width, spec.height, nice_max(top), rows + 1);
  c.axes("filtration value", "bar");
  const std::set<std::size_t> highlighted(spec.highlight.begin(), spec.highlight.end());
  for (std::size_t i = 0; i < barcode.bars.size(); ++i) {
    const auto& bar = barcode.bars[i];
    const double row = rows - static_cast<double>(i);
    const bool hot = highlighted.count(i) != 0;
    c.line(c.x(bar.base.birth), c.y(row), c.x(bar.base.death), c.y(row), hot ? "base highlight" : "base",
           "stroke=\"lightgray\" stroke-width=\"6\"");
    c.line(c.x(bar.base.birth), c.y(row), c.x(bar.image_death), c.y(row), hot ? "image highlight" : "image",
           hot ? "stroke=\"red\" stroke-width=\"3\"" : "stroke=\"goldenrod\" stroke-width=\"3\"");
  }
  return c.finish();
}

std::string histogram_svg(std::span<const double> a, std::span<const double> b, std::string_view label_a,
                          std::string_view label_b, std::size_t bins) {
  bins = std::max<std::size_t>(bins, 1);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (auto s : {a, b})
    for (double v : s) {
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  if (!(hi > lo)) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  auto count = [&](std::span<const double> s) {
    std::vector<std::size_t> h(bins, 0);
    for (double v : s) h[std::min(bins - 1, static_cast<std::size_t>((v - lo) / width))]++;
    return h;
  };
  const auto ha = count(a), hb = count(b);
  std::size_t peak = 1;
  for (std::size_t k = 0; k < bins; ++k) peak = std::max({peak, ha[k], hb[k]});

  Canvas c(640, 400, hi, static_cast<double>(peak) * 1.05, lo, 0.0);
  c.axes("total mixup", "iterations");
  for (std::size_t k = 0; k < bins; ++k) {
    const double x0 = lo + width * static_cast<double>(k);
    c.rect(c.x(x0), c.y(0), c.x(x0 + width), c.y(static_cast<double>(ha[k])), "bin a",
           "fill=\"steelblue\" fill-opacity=\"0.5\"");
    c.rect(c.x(x0), c.y(0), c.x(x0 + width), c.y(static_cast<double>(hb[k])), "bin b",
           "fill=\"darkorange\" fill-opacity=\"0.5\"");
  }
  c.text(c.x(hi) - 4, 20, label_a, "end");
  c.text(c.x(hi) - 4, 34, label_b, "end");
  c.rect(c.x(hi) - 104, 12, c.x(hi) - 94, 22, "legend a", "fill=\"steelblue\" fill-opacity=\"0.5\"");
  c.rect(c.x(hi) - 104, 26, c.x(hi) - 94, 36, "legend b", "fill=\"darkorange\" fill-opacity=\"0.5\"");
  return c.finish();
}

std::string boxplot_svg(std::span<const double> a, std::span<const double> b, std::string_view label_a,
                        std::string_view label_b) {
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double lo = 0.0, hi = 0.0;
  for (const auto* s : {&sa, &sb})
    if (!s->empty()) {
      lo = std::min(lo, s->front());
      hi = std::max(hi, s->back());
    }
  if (!(hi > lo)) hi = lo + 1.0;
  Canvas c(480, 400, 3.0, hi + 0.05 * (hi - lo), 0.0, lo);
  c.axes("", "total mixup");
  const std::array<const std::vector<double>*, 2> samples{&sa, &sb};
  const std::array<std::string_view, 2> names{label_a, label_b};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& s = *samples[k];
    const double center = 1.0 + static_cast<double>(k);
    c.text(c.x(center), c.y(lo) + 28, names[k]);
    if (s.empty()) continue;
    const double q1 = quantile(s, 0.25), q2 = quantile(s, 0.5), q3 = quantile(s, 0.75);
    const double iqr = q3 - q1;
    const auto low_it = std::lower_bound(s.begin(), s.end(), q1 - 1.5 * iqr);
    const auto high_it = std::upper_bound(s.begin(), s.end(), q3 + 1.5 * iqr);
    const double whisker_lo = *low_it, whisker_hi = *(high_it - 1);
    const std::string cls = k == 0 ? "a" : "b";
    c.line(c.x(center), c.y(whisker_lo), c.x(center), c.y(q1), "whisker " + cls, "stroke=\"black\"");
    c.line(c.x(center), c.y(q3), c.x(center), c.y(whisker_hi), "whisker " + cls, "stroke=\"black\"");
    c.rect(c.x(center - 0.25), c.y(q1), c.x(center + 0.25), c.y(q3), "box " + cls,
           k == 0 ? "fill=\"steelblue\" stroke=\"black\"" : "fill=\"darkorange\" stroke=\"black\"");
    c.line(c.x(center - 0.25), c.y(q2), c.x(center + 0.25), c.y(q2), "median " + cls, "stroke=\"black\" stroke-width=\"2\"");
    for (auto it = s.begin(); it != low_it; ++it) c.circle(c.x(center), c.y(*it), 2, "outlier " + cls, "fill=\"none\" stroke=\"black\"");
    for (auto it = high_it; it != s.end(); ++it) c.circle(c.x(center), c.y(*it), 2, "outlier " + cls, "fill=\"none\" stroke=\"black\"");
  }
  return c.finish();
}

}  // namespace holeprobe::plot
