#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "holeprobe/digest.hpp"
#include "holeprobe/errors.hpp"
#include "holeprobe/io.hpp"
#include "holeprobe/manifest.hpp"
#include "holeprobe/persistence.hpp"
#include "support/fixtures.hpp"

using namespace holeprobe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PersistenceDiagram figure_eight_diagram(bool truncate) {
  ComplexOptions options;
  if (truncate) options.truncation = 0.9;
  return reduce_h1(build_complex(dissimilarity_matrix(fixtures::figure_eight(), Metric::euclidean), options));
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
      CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(io::format_double(0.5) == "0.5");
  }

  TEST_CASE("points csv") {
    const auto cloud = io::parse_points_csv("x,y\n0,0\n1, 0\n\n1,1\n0,1\n");
    CHECK(cloud == fixtures::unit_square());
    CHECK(io::parse_points_csv(io::points_csv(cloud)) == cloud);
    CHECK(io::parse_points_csv("").empty());
    CHECK_THROWS_AS(io::parse_points_csv("0,0\n1,a\n"), InputError);
    CHECK_THROWS_AS(io::parse_points_csv("0,0\n1,0,2\n"), InputError);
  }

  TEST_CASE("points binary") {
    const auto cloud = fixtures::figure_eight();
    const auto bytes = io::points_binary(cloud);
    CHECK(bytes.size() == 24 + 8 * 16 * 2);
    CHECK(bytes.substr(0, 8) == "HPROBE01");
    CHECK(io::parse_points_binary(bytes) == cloud);
    CHECK_THROWS_AS(io::parse_points_binary(bytes.substr(0, bytes.size() - 8)), InputError);
    CHECK_THROWS_AS(io::parse_points_binary(bytes + "x"), InputError);
    CHECK_THROWS_AS(io::parse_points_binary("HPROBE02" + bytes.substr(8)), InputError);
  }

  TEST_CASE("read_points detects the format") {
    TempDir dir("holeprobe_io_points");
    const auto cloud = fixtures::figure_eight();
    io::write_file(dir.path / "a.bin", io::points_binary(cloud));
    io::write_file(dir.path / "a.csv", io::points_csv(cloud));
    CHECK(io::read_points(dir.path / "a.bin") == cloud);
    CHECK(io::read_points(dir.path / "a.csv") == cloud);
    CHECK_THROWS_AS(io::read_points(dir.path / "missing.csv"), InputError);
  }

  TEST_CASE("matrix csv layouts") {
    const auto full = io::parse_matrix_csv("0,1,2\n1,0,3\n2,3,0\n");
    CHECK(io::parse_matrix_csv("0\n1,0\n2,3,0\n") == full);
    CHECK(io::parse_matrix_csv("1\n2,3\n") == full);
    const auto pair = io::parse_matrix_csv("0.5\n");
    REQUIRE(pair.size() == 2);
    CHECK(pair(0, 1) == 0.5);
    CHECK(io::parse_matrix_csv("0\n").size() == 1);
    CHECK_THROWS_AS(io::parse_matrix_csv(""), InputError);
    CHECK_THROWS_AS(io::parse_matrix_csv("0,1\n1\n2,3,4\n"), InputError);
    CHECK_THROWS_AS(io::parse_matrix_csv("0,1\n2,0\n"), InputError);  // asymmetric
  }

  TEST_CASE("diagram json round-trips") {
    for (bool truncate : {false, true}) {
      const auto diagram = figure_eight_diagram(truncate);
      REQUIRE(!diagram.bars.empty());
      CHECK(io::parse_diagram_json(io::diagram_json(diagram, true)) == diagram);
      auto stripped = diagram;
      for (auto& bar : stripped.bars) bar.representative.clear();
      CHECK(io::parse_diagram_json(io::diagram_json(diagram, false)) == stripped);
    }
    CHECK(figure_eight_diagram(true).finite_count() < figure_eight_diagram(true).bars.size());
    CHECK_THROWS_AS(io::parse_diagram_json("{}"), InputError);
    CHECK_THROWS_AS(io::parse_diagram_json("[{\"birth\": 1}]"), InputError);
    CHECK_THROWS_AS(io::parse_diagram_json("not json"), InputError);
  }

  TEST_CASE("diagram json writes null for infinite deaths") {
    const auto text = io::diagram_json(figure_eight_diagram(true), false);
    CHECK(text.find("\"death\": null") != std::string::npos);
    CHECK(text.find("inf") == std::string::npos);
  }

  TEST_CASE("diagram csv") {
    PersistenceDiagram d;
    PersistenceBar bar;
    bar.birth = 1.0;
    bar.death = 1.5;
    d.bars.push_back(bar);
    CHECK(io::diagram_csv(d) == "birth,death,persistence\n1,1.5,0.5\n");
  }

  TEST_CASE("mixup json and summary") {
    const auto p = fixtures::unit_square();
    const auto pm = dissimilarity_matrix(p, Metric::euclidean);
    const auto complex = build_complex(pm);
    const auto diagram = reduce_h1(complex);
    const auto combined = build_combined_complex(combined_matrix(p, fixtures::square_center(), Metric::euclidean), complex);
    const auto barcode = image_persistence_h1(complex, combined, diagram);
    const auto text = io::mixup_json(barcode);
    CHECK(text.find("\"q_vertices\": [\n      0\n    ]") != std::string::npos);
    const auto back = io::parse_mixup_json(text);
    REQUIRE(back.bars.size() == 1);
    CHECK(back.bars[0].mixup == barcode.bars[0].mixup);
    CHECK(back.bars[0].image_death == barcode.bars[0].image_death);
    CHECK(back.bars[0].mixup_simplex == barcode.bars[0].mixup_simplex);
    CHECK(back.total_mixup == 1.0);
    CHECK(io::mixup_summary(barcode) ==
          "total_mixup 1\nbars 1\nbars_with_mixup 1\ninfinite_bars 0\nbase_points 4\nadded_points 1\n");
  }

  TEST_CASE("experiment tables") {
    ExperimentResult r;
    r.totals_a = {0.5, 1};
    r.totals_b = {0, 0.25};
    r.per_hole.push_back({3, 1, 1.5, 0.5, 0.75, 0});
    CHECK(io::totals_csv(r) == "iteration,total_a,total_b\n0,0.5,0\n1,1,0.25\n");
    CHECK(io::per_hole_csv(r) == "index,birth,death,persistence,avg_mixup_a,avg_mixup_b\n3,1,1.5,0.5,0.75,0\n");
  }
}

TEST_SUITE("manifest") {
  TEST_CASE("sha256 digests") {
    CHECK(sha256_hex(std::string("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex(std::string()) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK_THROWS_AS(sha256_file("/nonexistent/holeprobe"), InputError);
  }

  TEST_CASE("manifest round-trips and detects changed inputs") {
    TempDir dir("holeprobe_manifest");
    const auto base = (dir.path / "base.csv").string();
    const auto a = (dir.path / "a.csv").string();
    const auto b = (dir.path / "b.csv").string();
    io::write_file(base, io::points_csv(fixtures::unit_square()));
    io::write_file(a, io::points_csv(fixtures::square_center()));
    io::write_file(b, "5,5\n");

    RunManifest m;
    m.version = "test";
    m.base = record_input(base);
    m.class_a = record_input(a);
    m.class_b = record_input(b);
    m.metric = Metric::euclidean;
    m.truncation = 2.5;
    m.config.iterations = 12;
    m.config.sample_fraction = 0.3;
    m.config.seed = 42;
    m.config.average_nonzero_only = true;
    m.output = "out";

    const auto text = m.to_json();
    auto back = RunManifest::from_json(text);
    back.config.workers = m.config.workers;
    CHECK(back == m);
    CHECK(back.to_json() == text);
    CHECK_NOTHROW(m.verify_inputs());

    io::write_file(a, "0.5,0.25\n");
    CHECK_THROWS_AS(m.verify_inputs(), InputError);
  }

  TEST_CASE("manifest rejects bad content") {
    CHECK_THROWS_AS(RunManifest::from_json("[]"), InputError);
    CHECK_THROWS_AS(RunManifest::from_json("{"), InputError);
    RunManifest m;
    m.config.iterations = 0;
    CHECK_THROWS_AS(RunManifest::from_json(m.to_json()), InputError);
  }

  TEST_CASE("metric names") {
    CHECK(parse_metric("cosine") == Metric::cosine);
    CHECK(parse_metric(metric_name(Metric::euclidean)) == Metric::euclidean);
    CHECK_THROWS_AS(parse_metric("manhattan"), InputError);
  }
}
