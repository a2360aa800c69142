// holeprobe: persistence diagrams, mixup barcodes and total-mixup experiments.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holeprobe/errors.hpp"
#include "holeprobe/io.hpp"
#include "holeprobe/manifest.hpp"
#include "holeprobe/mixup.hpp"
#include "holeprobe/persistence.hpp"
#include "holeprobe/plot.hpp"
#include "holeprobe/stats.hpp"
#include "holeprobe/synth.hpp"
#include "holeprobe/version.hpp"

namespace fs = std::filesystem;
using namespace holeprobe;

namespace {

constexpr int kInputError = 2;
constexpr int kResourceError = 3;

struct PhArgs {
  std::string input;
  std::string metric = "cosine";
  std::optional<double> truncation;
  std::uint64_t max_simplices = ComplexOptions{}.simplex_cap;
  std::string output;
  std::string format = "json";
  bool with_cycles = false;
};

struct MixupArgs {
  std::string base;
  std::string add;
  std::string metric = "cosine";
  std::optional<double> truncation;
  std::uint64_t max_simplices = ComplexOptions{}.simplex_cap;
  std::string output;
};

struct ExperimentArgs {
  std::string base;
  std::string class_a;
  std::string class_b;
  std::string metric = "cosine";
  std::optional<double> truncation;
  std::uint64_t max_simplices = ComplexOptions{}.simplex_cap;
  ExperimentConfig config;
  std::string manifest;
  std::string output;
};

struct PlotArgs {
  std::string diagram;
  std::vector<std::size_t> highlight;
  std::optional<double> threshold;
  int width = 480;
  int height = 480;
  std::string output;
};

struct SynthArgs {
  std::string shape;
  std::size_t count = 16;
  double radius = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  synth::PlantedHoleOptions planted;
  std::string format = "csv";
  std::string output;
};

fs::path output_dir(const std::string& dir) {
  if (dir.empty()) throw InputError("--output is required");
  fs::create_directories(dir);
  return dir;
}

ComplexOptions complex_options(const std::optional<double>& truncation, std::uint64_t cap) {
  ComplexOptions options;
  options.truncation = truncation;
  options.simplex_cap = cap;
  return options;
}

// Matrix of the base input for ph/mixup, by metric.
DissimilarityMatrix base_matrix(const std::string& path, const std::string& metric, PointCloud* cloud) {
  if (metric == "precomputed") return io::read_matrix(path);
  *cloud = io::read_points(path);
  if (cloud->empty()) throw InputError(path + ": no points");
  return dissimilarity_matrix(*cloud, parse_metric(metric), 0);
}

int run_ph(const PhArgs& args) {
  PointCloud cloud;
  auto matrix = base_matrix(args.input, args.metric, &cloud);
  const auto complex = build_complex(std::move(matrix), complex_options(args.truncation, args.max_simplices));
  const auto diagram = reduce_h1(complex);
  const auto dir = output_dir(args.output);
  if (args.format == "json" || args.format == "both") {
    io::write_file(dir / "diagram.json", io::diagram_json(diagram, args.with_cycles));
  }
  if (args.format == "csv" || args.format == "both") io::write_file(dir / "diagram.csv", io::diagram_csv(diagram));
  const std::size_t infinite = diagram.bars.size() - diagram.finite_count();
  std::cout << "bars " << diagram.bars.size() << " finite " << diagram.finite_count() << " infinite " << infinite
            << " truncation " << io::format_double(complex.truncation()) << "\n";
  if (infinite > 0) std::cerr << "note: " << infinite << " bar(s) survive the truncation and have no death\n";
  return 0;
}

int run_mixup(const MixupArgs& args) {
  PointCloud p_cloud;
  auto p_matrix = base_matrix(args.base, args.metric, &p_cloud);
  const auto p = build_complex(p_matrix, complex_options(args.truncation, args.max_simplices));
  const auto diagram = reduce_h1(p);

  DissimilarityMatrix pq;
  if (args.metric == "precomputed") {
    const auto rows = io::parse_rows_csv(io::read_file(args.add));
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    if (rows.empty()) std::cerr << "warning: " << args.add << " has no rows; total mixup is 0\n";
    pq = extend_matrix(p_matrix, flat, rows.size());
  } else {
    const auto q = io::read_points(args.add);
    if (q.empty()) std::cerr << "warning: " << args.add << " has no points; total mixup is 0\n";
    pq = combined_matrix(p_matrix, p_cloud, q, parse_metric(args.metric));
  }
  const auto combined = build_combined_complex(std::move(pq), p, args.max_simplices);
  const auto barcode = image_persistence_h1(p, combined, diagram);

  const auto dir = output_dir(args.output);
  io::write_file(dir / "mixup.json", io::mixup_json(barcode));
  io::write_file(dir / "summary.txt", io::mixup_summary(barcode));
  std::cout << "total_mixup " << io::format_double(barcode.total_mixup) << "\n";
  if (!barcode.infinite_bars.empty()) {
    std::cerr << "note: " << barcode.infinite_bars.size() << " bar(s) without a finite death are excluded\n";
  }
  return 0;
}

int run_experiment_command(ExperimentArgs args) {
  RunManifest manifest;
  if (!args.manifest.empty()) {
    manifest = RunManifest::from_json(io::read_file(args.manifest));
    manifest.verify_inputs();
    manifest.config.workers = args.config.workers;
    if (!args.output.empty()) manifest.output = args.output;
  } else {
    if (args.base.empty() || args.class_a.empty() || args.class_b.empty()) {
      throw InputError("--base, --class-a and --class-b are required without --manifest");
    }
    args.config.validate();
    manifest.version = version;
    manifest.base = record_input(args.base);
    manifest.class_a = record_input(args.class_a);
    manifest.class_b = record_input(args.class_b);
    manifest.metric = parse_metric(args.metric);
    manifest.truncation = args.truncation;
    manifest.config = args.config;
    manifest.output = args.output;
  }

  const auto base_cloud = io::read_points(manifest.base.path);
  const auto class_a = io::read_points(manifest.class_a.path);
  const auto class_b = io::read_points(manifest.class_b.path);
  if (base_cloud.empty()) throw InputError(manifest.base.path + ": no points");
  if (class_a.empty()) throw InputError(manifest.class_a.path + ": no points");
  if (class_b.empty()) throw InputError(manifest.class_b.path + ": no points");

  const BaseModel base(base_cloud, manifest.metric, complex_options(manifest.truncation, args.max_simplices),
                       manifest.config.workers);
  const auto result = run_experiment(base, class_a, class_b, manifest.config);

  const auto dir = output_dir(manifest.output);
  io::write_file(dir / "result.json", io::experiment_json(result));
  io::write_file(dir / "totals.csv", io::totals_csv(result));
  io::write_file(dir / "per_hole.csv", io::per_hole_csv(result));
  io::write_file(dir / "histogram.svg", plot::histogram_svg(result.totals_a, result.totals_b));
  io::write_file(dir / "boxplot.svg", plot::boxplot_svg(result.totals_a, result.totals_b));
  io::write_file(dir / "manifest.json", manifest.to_json());
  std::cout << "mean_a " << io::format_double(result.mean_a) << " mean_b " << io::format_double(result.mean_b)
            << " observed_diff " << io::format_double(result.observed_diff) << " p_value "
            << io::format_double(result.p_value) << "\n";
  return 0;
}

int run_plot(const PlotArgs& args) {
  const std::string text = io::read_file(args.diagram);
  plot::PlotSpec spec;
  spec.highlight = args.highlight;
  spec.threshold = args.threshold;
  spec.width = args.width;
  spec.height = args.height;
  // Mixup barcodes carry image deaths; anything else is a diagram.
  const bool is_barcode = text.find("\"image_death\"") != std::string::npos;
  std::string svg = is_barcode ? plot::barcode_svg(io::parse_mixup_json(text), spec)
                               : plot::diagram_svg(io::parse_diagram_json(text), spec);
  const auto dir = output_dir(args.output);
  io::write_file(dir / (is_barcode ? "barcode.svg" : "diagram.svg"), svg);
  return 0;
}

int run_synth(SynthArgs args) {
  auto write = [&](const fs::path& dir, const std::string& name, const PointCloud& cloud) {
    if (args.format == "binary") {
      io::write_file(dir / (name + ".bin"), io::points_binary(cloud));
    } else {
      io::write_file(dir / (name + ".csv"), io::points_csv(cloud));
    }
  };
  if (args.shape == "circle") {
    const auto cloud = synth::circle(args.count, args.radius, args.noise, args.seed);
    write(output_dir(args.output), "points", cloud);
  } else if (args.shape == "figure-eight") {
    const auto cloud = synth::figure_eight(args.count, args.radius, args.noise, args.seed);
    write(output_dir(args.output), "points", cloud);
  } else if (args.shape == "planted-holes") {
    args.planted.seed = args.seed;
    const auto corpus = synth::planted_holes(args.planted);
    const auto dir = output_dir(args.output);
    write(dir, "base", corpus.base);
    write(dir, "inside", corpus.inside);
    write(dir, "outside", corpus.outside);
  } else {
    throw InputError("unknown shape '" + args.shape + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension-1 persistence, mixup barcodes and total-mixup experiments"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  const std::vector<std::string> metrics{"cosine", "euclidean", "precomputed"};

  PhArgs ph;
  auto* ph_cmd = app.add_subcommand("ph", "Persistence diagram in dimension 1");
  ph_cmd->add_option("--input", ph.input, "Points (CSV or binary) or a matrix CSV with --metric precomputed")->required();
  ph_cmd->add_option("--metric", ph.metric)->check(CLI::IsMember(metrics))->capture_default_str();
  ph_cmd->add_option("--truncation", ph.truncation, "Largest filtration value (default: enclosing radius)");
  ph_cmd->add_option("--max-simplices", ph.max_simplices, "Refuse complexes larger than this")->capture_default_str();
  ph_cmd->add_option("--output", ph.output, "Output directory")->required();
  ph_cmd->add_option("--format", ph.format)->check(CLI::IsMember({"json", "csv", "both"}))->capture_default_str();
  ph_cmd->add_flag("--with-cycles", ph.with_cycles, "Include representative cycles in the JSON output");

  MixupArgs mx;
  auto* mx_cmd = app.add_subcommand("mixup", "Mixup barcode of a base cloud against added points");
  mx_cmd->add_option("--base", mx.base)->required();
  mx_cmd->add_option("--add", mx.add, "Added points, or added matrix rows with --metric precomputed")->required();
  mx_cmd->add_option("--metric", mx.metric)->check(CLI::IsMember(metrics))->capture_default_str();
  mx_cmd->add_option("--truncation", mx.truncation);
  mx_cmd->add_option("--max-simplices", mx.max_simplices, "Refuse complexes larger than this")->capture_default_str();
  mx_cmd->add_option("--output", mx.output, "Output directory")->required();

  ExperimentArgs ex;
  auto* ex_cmd = app.add_subcommand("experiment", "Subsampled total-mixup comparison of two classes");
  ex_cmd->add_option("--base", ex.base, "Base point cloud");
  ex_cmd->add_option("--class-a", ex.class_a, "Points of class A");
  ex_cmd->add_option("--class-b", ex.class_b, "Points of class B");
  ex_cmd->add_option("--metric", ex.metric)
      ->check(CLI::IsMember(std::vector<std::string>{"cosine", "euclidean"}))
      ->capture_default_str();
  ex_cmd->add_option("--truncation", ex.truncation);
  ex_cmd->add_option("--max-simplices", ex.max_simplices, "Refuse complexes larger than this")->capture_default_str();
  ex_cmd->add_option("--iterations", ex.config.iterations)->capture_default_str();
  ex_cmd->add_option("--fraction", ex.config.sample_fraction)->capture_default_str();
  ex_cmd->add_option("--seed", ex.config.seed)->capture_default_str();
  ex_cmd->add_option("--permutations", ex.config.permutations)->capture_default_str();
  ex_cmd->add_option("--persistence-threshold", ex.config.persistence_threshold)->capture_default_str();
  ex_cmd->add_flag("--nonzero-average", ex.config.average_nonzero_only,
                   "Average per-hole mixup over iterations where it is non-zero");
  ex_cmd->add_option("--workers", ex.config.workers, "Worker threads (0: HOLEPROBE_WORKERS or all cores)");
  ex_cmd->add_option("--manifest", ex.manifest, "Rerun the experiment recorded in a manifest.json");
  ex_cmd->add_option("--output", ex.output, "Output directory");

  PlotArgs pl;
  auto* pl_cmd = app.add_subcommand("plot", "SVG of a diagram or mixup barcode");
  pl_cmd->add_option("--diagram", pl.diagram, "diagram.json or mixup.json")->required();
  pl_cmd->add_option("--highlight", pl.highlight, "Bar indices to highlight")->delimiter(',');
  pl_cmd->add_option("--threshold-line", pl.threshold, "Draw the line death = birth + value");
  pl_cmd->add_option("--width", pl.width)->capture_default_str();
  pl_cmd->add_option("--height", pl.height)->capture_default_str();
  pl_cmd->add_option("--output", pl.output, "Output directory")->required();

  SynthArgs sy;
  auto* sy_cmd = app.add_subcommand("synth", "Synthetic point clouds");
  sy_cmd->add_option("--shape", sy.shape, "circle, figure-eight or planted-holes")->required();
  sy_cmd->add_option("--count", sy.count, "Points (circle, figure-eight)")->capture_default_str();
  sy_cmd->add_option("--radius", sy.radius)->capture_default_str();
  sy_cmd->add_option("--noise", sy.noise)->capture_default_str();
  sy_cmd->add_option("--seed", sy.seed)->capture_default_str();
  sy_cmd->add_option("--holes", sy.planted.holes)->capture_default_str();
  sy_cmd->add_option("--ring-points", sy.planted.ring_points)->capture_default_str();
  sy_cmd->add_option("--hole-radius", sy.planted.hole_radius, "Angular radius of each hole")->capture_default_str();
  sy_cmd->add_option("--inside", sy.planted.inside)->capture_default_str();
  sy_cmd->add_option("--outside", sy.planted.outside)->capture_default_str();
  sy_cmd->add_option("--ring-noise", sy.planted.noise)->capture_default_str();
  sy_cmd->add_option("--format", sy.format)->check(CLI::IsMember({"csv", "binary"}))->capture_default_str();
  sy_cmd->add_option("--output", sy.output, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*ph_cmd) return run_ph(ph);
    if (*mx_cmd) return run_mixup(mx);
    if (*ex_cmd) return run_experiment_command(ex);
    if (*pl_cmd) return run_plot(pl);
    if (*sy_cmd) return run_synth(sy);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << " (projected " << e.projected() << ")\n";
    return kResourceError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
