#include "holeprobe/persistence.hpp"

#include <algorithm>
#include <map>

#include "coboundary_reduction.hpp"
#include "holeprobe/errors.hpp"

namespace holeprobe {

std::size_t PersistenceDiagram::finite_count() const {
  return static_cast<std::size_t>(
      std::count_if(bars.begin(), bars.end(), [](const PersistenceBar& b) { return b.finite(); }));
}

bool bar_order(const PersistenceBar& a, const PersistenceBar& b) {
  const double pa = a.persistence();
  const double pb = b.persistence();
  if (pa != pb) return pa > pb;
  if (a.birth != b.birth) return a.birth < b.birth;
  return filtration_less(a.birth_simplex, b.birth_simplex);
}

bool is_z2_cycle(std::span<const EdgeVertices> edges) {
  std::map<Vertex, int> degree;
  for (const auto& e : edges) {
    degree[e[0]] ^= 1;
    degree[e[1]] ^= 1;
  }
  return std::all_of(degree.begin(), degree.end(), [](const auto& kv) { return kv.second == 0; });
}

namespace {

// Kruskal forest of the complex's edges. The forest path between the ends of
// a non-forest edge only uses edges that precede it, so one forest serves
// every birth edge.
class SpanningForest {
 public:
  explicit SpanningForest(const FilteredComplex& complex)
      : edges_(complex.edges()), adjacency_(complex.vertex_count()) {
    const std::vector<bool> forest = detail::kruskal_forest(complex.vertex_count(), edges_);
    for (std::size_t r = 0; r < edges_.size(); ++r) {
      if (!forest[r]) continue;
      adjacency_[edges_[r].u].push_back(r);
      adjacency_[edges_[r].v].push_back(r);
    }
  }

  std::vector<EdgeVertices> cycle(const Edge& birth_edge) const {
    const std::size_t n = adjacency_.size();
    if (birth_edge.u >= n || birth_edge.v >= n) {
      throw ContractViolation("birth edge is not an edge of the complex");
    }
    std::vector<std::size_t> via(n, edges_.size());
    std::vector<bool> seen(n, false);
    std::vector<Vertex> frontier{birth_edge.u};
    seen[birth_edge.u] = true;
    while (!frontier.empty() && !seen[birth_edge.v]) {
      const Vertex x = frontier.back();
      frontier.pop_back();
      for (std::size_t r : adjacency_[x]) {
        const Vertex y = edges_[r].u == x ? edges_[r].v : edges_[r].u;
        if (seen[y]) continue;
        seen[y] = true;
        via[y] = r;
        frontier.push_back(y);
      }
    }
    if (!seen[birth_edge.v]) throw ContractViolation("birth edge does not close a cycle");

    std::vector<EdgeVertices> cycle{{birth_edge.u, birth_edge.v}};
    for (Vertex x = birth_edge.v; x != birth_edge.u;) {
      const Edge& e = edges_[via[x]];
      if (!edge_less(e, birth_edge)) throw ContractViolation("birth edge is a forest edge");
      cycle.push_back({e.u, e.v});
      x = e.u == x ? e.v : e.u;
    }
    return cycle;
  }

 private:
  std::span<const Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace

std::vector<EdgeVertices> birth_cycle(const FilteredComplex& complex, const Edge& birth_edge) {
  return SpanningForest(complex).cycle(birth_edge);
}

PersistenceDiagram reduce_h1(const FilteredComplex& complex) {
  if (complex.max_dim() != 2) {
    throw ContractViolation("H1 persistence needs the 2-skeleton (max_dim = 2)");
  }
  auto edges = complex.edges();
  const detail::EdgePairing pairing =
      detail::reduce_coboundaries(complex.matrix(), edges, complex.truncation());
  const SpanningForest forest(complex);

  PersistenceDiagram diagram;
  for (std::size_t r = 0; r < edges.size(); ++r) {
    const Edge& e = edges[r];
    if (pairing.status[r] == detail::ColumnStatus::paired) {
      const detail::TriangleEntry& t = pairing.pivot[r];
      if (!(e.value < t.value)) continue;
      PersistenceBar bar;
      bar.birth = e.value;
      bar.death = t.value;
      bar.birth_simplex = e.simplex();
      bar.death_simplex = t.simplex();
      bar.representative = forest.cycle(e);
      diagram.bars.push_back(std::move(bar));
    } else if (pairing.status[r] == detail::ColumnStatus::essential) {
      PersistenceBar bar;
      bar.birth = e.value;
      bar.birth_simplex = e.simplex();
      bar.representative = forest.cycle(e);
      diagram.bars.push_back(std::move(bar));
    }
  }
  std::sort(diagram.bars.begin(), diagram.bars.end(), bar_order);
  return diagram;
}

std::vector<EdgeVertices> representative_cycle(const FilteredComplex& complex,
                                               const PersistenceBar& bar) {
  const auto& s = bar.birth_simplex;
  return birth_cycle(complex, Edge{s.vertices[0], s.vertices[1], s.value});
}

}  // namespace holeprobe
