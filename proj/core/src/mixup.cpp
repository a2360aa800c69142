#include "holeprobe/mixup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coboundary_reduction.hpp"
#include "holeprobe/errors.hpp"

namespace holeprobe {

namespace {

std::string describe(const FiltrationSimplex& s) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (int k = 0; k <= s.dim; ++k) out << (k ? ", " : "") << s.vertices[static_cast<std::size_t>(k)];
  out << ") at " << s.value;
  return out.str();
}

void require_same_dim(const PointCloud& p, const PointCloud& q) {
  if (!q.empty() && q.dim() != p.dim()) {
    throw InputError("dimensionality mismatch: base has " + std::to_string(p.dim()) +
                     " coordinates, added points have " + std::to_string(q.dim()));
  }
}

void check_leading_block(const FilteredComplex& p, const FilteredComplex& pq) {
  const std::size_t np = p.vertex_count();
  if (pq.vertex_count() < np) {
    throw ContractViolation("combined complex has fewer vertices than the base complex");
  }
  for (const Edge& e : p.edges()) {
    const double value = pq.matrix()(e.u, e.v);
    if (value != e.value) {
      throw ContractViolation("combined complex differs from base at edge " +
                              describe(e.simplex()) + " (combined value " +
                              std::to_string(value) + ")");
    }
  }
  // Entries above the base truncation must agree too, or P's simplex set
  // inside the combined complex would differ.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i + 1; j < np; ++j) {
      if (p.matrix()(i, j) != pq.matrix()(i, j)) {
        throw ContractViolation("combined matrix differs from base at entry (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  if (pq.truncation() < p.truncation()) {
    auto edges = p.edges();
    auto missing = std::find_if(edges.begin(), edges.end(),
                                [&](const Edge& e) { return e.value > pq.truncation(); });
    std::string first = missing != edges.end()
                            ? describe(missing->simplex())
                            : "a triangle with value above " + std::to_string(pq.truncation());
    throw ContractViolation("combined complex is truncated below the base complex; missing " +
                            first);
  }
  if (p.max_dim() != 2 || pq.max_dim() != 2) {
    throw ContractViolation("image persistence needs 2-skeleta");
  }
}

}  // namespace

DissimilarityMatrix combined_matrix(const PointCloud& p, const PointCloud& q, Metric metric) {
  require_same_dim(p, q);
  return combined_matrix(dissimilarity_matrix(p, metric), p, q, metric);
}

DissimilarityMatrix combined_matrix(const DissimilarityMatrix& p_matrix, const PointCloud& p,
                                    const PointCloud& q, Metric metric) {
  require_same_dim(p, q);
  if (p_matrix.size() != p.size()) {
    throw ContractViolation("base matrix size does not match base cloud");
  }
  if (q.empty()) return p_matrix;
  const std::size_t np = p.size();
  const std::size_t nq = q.size();
  DissimilarityMatrix d(np + nq);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i + 1; j < np; ++j) d.set(i, j, p_matrix(i, j));
  }
  for (std::size_t k = 0; k < nq; ++k) {
    const auto qk = q.point(k);
    try {
      for (std::size_t i = 0; i < np; ++i) d.set(i, np + k, dissimilarity(metric, p.point(i), qk));
      for (std::size_t l = k + 1; l < nq; ++l) d.set(np + k, np + l, dissimilarity(metric, qk, q.point(l)));
    } catch (const InputError& e) {
      throw InputError("added point " + std::to_string(k) + ": " + e.what());
    }
  }
  return d;
}

DissimilarityMatrix extend_matrix(const DissimilarityMatrix& p_matrix, std::span<const double> q_rows,
                                  std::size_t q_count) {
  const std::size_t np = p_matrix.size();
  const std::size_t n = np + q_count;
  if (q_rows.size() != q_count * n) {
    throw InputError("added rows must have " + std::to_string(n) + " entries each");
  }
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < np; ++i) {
    auto row = p_matrix.row(i);
    std::copy(row.begin(), row.end(), entries.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  for (std::size_t k = 0; k < q_count; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double value = q_rows[k * n + j];
      entries[(np + k) * n + j] = value;
      if (j < np) entries[j * n + np + k] = value;
    }
  }
  return DissimilarityMatrix::from_dense(n, std::move(entries));
}

FilteredComplex build_combined_complex(DissimilarityMatrix pq_matrix,
                                       const FilteredComplex& p_complex,
                                       std::uint64_t simplex_cap) {
  ComplexOptions options;
  options.max_dim = 2;
  options.simplex_cap = simplex_cap;
  if (p_complex.truncation() > 0.0) options.truncation = p_complex.truncation();
  return build_complex(std::move(pq_matrix), options);
}

MixupBarcode image_persistence_h1(const FilteredComplex& p_complex,
                                  const FilteredComplex& pq_complex,
                                  const PersistenceDiagram& p_diagram) {
  check_leading_block(p_complex, pq_complex);
  const std::size_t np = p_complex.vertex_count();

  MixupBarcode barcode;
  barcode.p_count = np;
  barcode.q_count = pq_complex.vertex_count() - np;

  auto p_edges = p_complex.edges();
  double threshold = -1.0;
  std::vector<std::size_t> positions;
  for (const PersistenceBar& bar : p_diagram.bars) {
    if (!bar.finite()) {
      barcode.infinite_bars.push_back(bar);
      continue;
    }
    const auto& s = bar.birth_simplex;
    const Edge birth{s.vertices[0], s.vertices[1], s.value};
    auto it = std::lower_bound(p_edges.begin(), p_edges.end(), birth, edge_less);
    if (s.dim != 1 || it == p_edges.end() || !(*it == birth)) {
      throw ContractViolation("bar birth edge " + describe(s) + " is not in the base complex");
    }
    positions.push_back(static_cast<std::size_t>(it - p_edges.begin()));
    threshold = std::max(threshold, bar.death);
  }
  if (positions.empty()) return barcode;

  // Rows: base edges in base order, then Q-incident edges in combined order.
  std::vector<Edge> rows(p_edges.begin(), p_edges.end());
  for (const Edge& e : pq_complex.edges()) {
    if (e.v >= np) rows.push_back(e);
  }
  const std::size_t lowest = *std::min_element(positions.begin(), positions.end());
  const detail::EdgePairing pairing =
      detail::reduce_coboundaries(pq_complex.matrix(), rows, threshold, lowest);

  std::size_t next = 0;
  for (const PersistenceBar& bar : p_diagram.bars) {
    if (!bar.finite()) continue;
    const std::size_t r = positions[next++];
    if (pairing.status[r] != detail::ColumnStatus::paired) {
      throw std::logic_error("base bar has no image death below its death");
    }
    const detail::TriangleEntry& killer = pairing.pivot[r];
    if (!(bar.birth <= killer.value && killer.value <= bar.death)) {
      throw std::logic_error("image death outside [birth, death]");
    }
    MixupBar m;
    m.base = bar;
    m.image_death = killer.value;
    m.mixup = (bar.death - killer.value) / (bar.death - bar.birth);
    m.mixup_simplex = killer.simplex();
    m.q_vertex_count = static_cast<int>(
        std::count_if(m.mixup_simplex.vertices.begin(), m.mixup_simplex.vertices.end(),
                      [np](Vertex v) { return v >= np; }));
    barcode.bars.push_back(std::move(m));
  }
  barcode.total_mixup = total_mixup(barcode);
  return barcode;
}

double total_mixup(const MixupBarcode& barcode) {
  double sum = 0.0;
  for (const MixupBar& bar : barcode.bars) sum += bar.mixup;
  return sum;
}

}  // namespace holeprobe
