#include "holeprobe/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "holeprobe/errors.hpp"
#include "json.hpp"

namespace holeprobe::io {

using nlohmann::json;

namespace {

constexpr std::string_view kMagic = "HPROBE01";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

// Numeric rows of a CSV text. Blank lines are skipped. A first line whose
// fields are all non-numeric is taken as a header.
std::vector<std::vector<double>> numeric_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const auto pos = text.find('\n');
    const auto line = trim(text.substr(0, pos));
    text = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    std::vector<double> row;
    std::size_t bad = 0;
    for (auto f : fields) {
      if (auto v = parse_number(f)) {
        row.push_back(*v);
      } else {
        ++bad;
      }
    }
    if (first && bad == fields.size()) {
      first = false;
      continue;
    }
    first = false;
    if (bad != 0) throw InputError("line " + std::to_string(line_no) + ": non-numeric field");
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
void put_le(std::string& out, T value) {
  auto bits = std::bit_cast<std::array<char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  out.append(bits.data(), bits.size());
}

template <class T>
T get_le(std::string_view bytes, std::size_t offset) {
  std::array<char, sizeof(T)> bits{};
  std::memcpy(bits.data(), bytes.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  return std::bit_cast<T>(bits);
}

json number(double v) {
  if (std::isinf(v) || std::isnan(v)) return nullptr;
  return v;
}

json simplex_json(const FiltrationSimplex& s) {
  json vertices = json::array();
  for (Vertex v : s.vertex_span()) vertices.push_back(v);
  return {{"vertices", vertices}, {"value", s.value}};
}

FiltrationSimplex parse_simplex(const json& j) {
  const auto& vs = j.at("vertices");
  FiltrationSimplex s;
  if (!vs.is_array() || vs.empty() || vs.size() > 3) throw InputError("simplex needs 1 to 3 vertices");
  s.dim = static_cast<int>(vs.size()) - 1;
  for (std::size_t k = 0; k < vs.size(); ++k) s.vertices[k] = vs[k].get<Vertex>();
  s.value = j.at("value").get<double>();
  return s;
}

double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class Fn>
auto guarded(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return {buffer.data(), end};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("error writing " + path.string());
}

PointCloud read_points(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  try {
    if (data.compare(0, kMagic.size(), kMagic) == 0) return parse_points_binary(data);
    return parse_points_csv(data);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

PointCloud parse_points_csv(std::string_view text) { return PointCloud::from_rows(numeric_rows(text)); }

PointCloud parse_points_binary(std::string_view bytes) {
  if (bytes.size() < 24 || bytes.substr(0, 8) != kMagic) throw InputError("missing HPROBE01 header");
  const auto n = get_le<std::uint64_t>(bytes, 8);
  const auto dim = get_le<std::uint64_t>(bytes, 16);
  if (dim == 0 && n != 0) throw InputError("dimension must be positive");
  if (n != 0 && (bytes.size() - 24) / 8 / n < dim) throw InputError("truncated point data");
  if (bytes.size() != 24 + 8 * n * dim) throw InputError("trailing bytes after point data");
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = get_le<double>(bytes, 24 + 8 * i);
  if (n == 0) return {};
  return PointCloud(dim, std::move(coords));
}

std::string points_csv(const PointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      out += format_double(p[k]);
    }
    out += '\n';
  }
  return out;
}

std::string points_binary(const PointCloud& cloud) {
  std::string out(kMagic);
  put_le<std::uint64_t>(out, cloud.size());
  put_le<std::uint64_t>(out, cloud.dim());
  for (double x : cloud.coords()) put_le(out, x);
  return out;
}

std::vector<std::vector<double>> parse_rows_csv(std::string_view text) { return numeric_rows(text); }

DissimilarityMatrix read_matrix(const std::filesystem::path& path) {
  try {
    return parse_matrix_csv(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

DissimilarityMatrix parse_matrix_csv(std::string_view text) {
  const auto rows = numeric_rows(text);
  if (rows.empty()) throw InputError("empty matrix");
  const std::size_t r = rows.size();

  // A single non-zero value is the two-point lower triangle, not a 1x1 matrix.
  const bool square = std::all_of(rows.begin(), rows.end(), [&](const auto& row) { return row.size() == r; }) &&
                      !(r == 1 && rows[0][0] != 0.0);
  if (square) {
    std::vector<double> entries;
    entries.reserve(r * r);
    for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
    return DissimilarityMatrix::from_dense(r, std::move(entries));
  }

  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != i + 1) throw InputError("matrix is neither square nor lower-triangular");
  }
  // Row i holds i + 1 values either way; a zero in every last position means
  // the diagonal is included.
  const bool diagonal = std::all_of(rows.begin(), rows.end(), [](const auto& row) { return row.back() == 0.0; });
  const std::size_t n = diagonal ? r : r + 1;
  const std::size_t offset = diagonal ? 0 : 1;
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const std::size_t a = i + offset;
      entries[a * n + j] = rows[i][j];
      entries[j * n + a] = rows[i][j];
    }
  }
  return DissimilarityMatrix::from_dense(n, std::move(entries));
}

std::string diagram_json(const PersistenceDiagram& diagram, bool with_cycles) {
  json bars = json::array();
  for (const auto& bar : diagram.bars) {
    json j{{"birth", bar.birth},
           {"death", number(bar.death)},
           {"persistence", number(bar.persistence())},
           {"birth_simplex", simplex_json(bar.birth_simplex)},
           {"death_simplex", bar.death_simplex ? simplex_json(*bar.death_simplex) : json(nullptr)}};
    if (with_cycles) {
      json cycle = json::array();
      for (const auto& e : bar.representative) cycle.push_back({e[0], e[1]});
      j["representative"] = std::move(cycle);
    }
    bars.push_back(std::move(j));
  }
  return dump(bars);
}

PersistenceDiagram parse_diagram_json(std::string_view text) {
  return guarded("diagram", [&] {
    const json j = json::parse(text);
    if (!j.is_array()) throw InputError("diagram must be a JSON array");
    PersistenceDiagram diagram;
    for (const auto& b : j) {
      PersistenceBar bar;
      bar.birth = b.at("birth").get<double>();
      bar.death = number_or_inf(b.at("death"));
      bar.birth_simplex = parse_simplex(b.at("birth_simplex"));
      if (b.contains("death_simplex") && !b["death_simplex"].is_null()) bar.death_simplex = parse_simplex(b["death_simplex"]);
      if (b.contains("representative")) {
        for (const auto& e : b["representative"]) bar.representative.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
      }
      diagram.bars.push_back(std::move(bar));
    }
    return diagram;
  });
}

std::string diagram_csv(const PersistenceDiagram& diagram) {
  std::string out = "birth,death,persistence\n";
  for (const auto& bar : diagram.bars) {
    out += format_double(bar.birth) + ',' + format_double(bar.death) + ',' + format_double(bar.persistence()) + '\n';
  }
  return out;
}

std::string mixup_json(const MixupBarcode& barcode) {
  json bars = json::array();
  for (const auto& bar : barcode.bars) {
    json q = json::array();
    for (Vertex v : bar.mixup_simplex.vertex_span()) {
      if (v >= barcode.p_count) q.push_back(v - barcode.p_count);
    }
    bars.push_back({{"birth", bar.base.birth},
                    {"death", bar.base.death},
                    {"image_death", bar.image_death},
                    {"mixup", bar.mixup},
                    {"birth_simplex", simplex_json(bar.base.birth_simplex)},
                    {"death_simplex", simplex_json(*bar.base.death_simplex)},
                    {"mixup_simplex", simplex_json(bar.mixup_simplex)},
                    {"q_vertex_count", bar.q_vertex_count},
                    {"q_vertices", q}});
  }
  return dump(bars);
}

MixupBarcode parse_mixup_json(std::string_view text) {
  return guarded("mixup barcode", [&] {
    const json j = json::parse(text);
    if (!j.is_array()) throw InputError("mixup barcode must be a JSON array");
    MixupBarcode barcode;
    for (const auto& b : j) {
      MixupBar bar;
      bar.base.birth = b.at("birth").get<double>();
      bar.base.death = b.at("death").get<double>();
      if (b.contains("birth_simplex")) bar.base.birth_simplex = parse_simplex(b["birth_simplex"]);
      if (b.contains("death_simplex")) bar.base.death_simplex = parse_simplex(b["death_simplex"]);
      bar.image_death = b.at("image_death").get<double>();
      bar.mixup = b.at("mixup").get<double>();
      bar.mixup_simplex = parse_simplex(b.at("mixup_simplex"));
      bar.q_vertex_count = b.at("q_vertex_count").get<int>();
      barcode.total_mixup += bar.mixup;
      barcode.bars.push_back(std::move(bar));
    }
    return barcode;
  });
}

std::string mixup_summary(const MixupBarcode& barcode) {
  std::size_t filled = 0;
  for (const auto& bar : barcode.bars) filled += bar.mixup > 0.0 ? 1 : 0;
  std::string out;
  out += "total_mixup " + format_double(barcode.total_mixup) + '\n';
  out += "bars " + std::to_string(barcode.bars.size()) + '\n';
  out += "bars_with_mixup " + std::to_string(filled) + '\n';
  out += "infinite_bars " + std::to_string(barcode.infinite_bars.size()) + '\n';
  out += "base_points " + std::to_string(barcode.p_count) + '\n';
  out += "added_points " + std::to_string(barcode.q_count) + '\n';
  return out;
}

namespace {

json config_object(const ExperimentConfig& c) {
  return {{"iterations", c.iterations},
          {"sample_fraction", c.sample_fraction},
          {"seed", c.seed},
          {"persistence_threshold", c.persistence_threshold},
          {"permutations", c.permutations},
          {"average_nonzero_only", c.average_nonzero_only}};
}

}  // namespace

std::string config_json(const ExperimentConfig& config) { return dump(config_object(config)); }

std::string experiment_json(const ExperimentResult& r) {
  json holes = json::array();
  for (const auto& h : r.per_hole) {
    holes.push_back({{"index", h.index},
                     {"birth", h.birth},
                     {"death", h.death},
                     {"persistence", h.persistence},
                     {"avg_mixup_a", h.avg_mixup_a},
                     {"avg_mixup_b", h.avg_mixup_b}});
  }
  const json j{{"config", config_object(r.config)},
               {"totals_a", r.totals_a},
               {"totals_b", r.totals_b},
               {"mean_a", r.mean_a},
               {"mean_b", r.mean_b},
               {"observed_diff", r.observed_diff},
               {"p_value", r.p_value},
               {"per_hole", holes}};
  return dump(j);
}

std::string totals_csv(const ExperimentResult& r) {
  std::string out = "iteration,total_a,total_b\n";
  for (std::size_t i = 0; i < r.totals_a.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(r.totals_a[i]) + ',' + format_double(r.totals_b[i]) + '\n';
  }
  return out;
}

std::string per_hole_csv(const ExperimentResult& r) {
  std::string out = "index,birth,death,persistence,avg_mixup_a,avg_mixup_b\n";
  for (const auto& h : r.per_hole) {
    out += std::to_string(h.index) + ',' + format_double(h.birth) + ',' + format_double(h.death) + ',' +
           format_double(h.persistence) + ',' + format_double(h.avg_mixup_a) + ',' + format_double(h.avg_mixup_b) + '\n';
  }
  return out;
}

}  // namespace holeprobe::io
