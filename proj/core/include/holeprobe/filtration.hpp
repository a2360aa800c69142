#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "holeprobe/metricspace.hpp"

namespace holeprobe {

using Vertex = std::uint32_t;

/// A vertex, edge or triangle of a Rips filtration. Only the first dim + 1
/// entries of `vertices` are meaningful; they are strictly increasing.
struct FiltrationSimplex {
  std::array<Vertex, 3> vertices{};
  int dim = 0;
  double value = 0.0;

  static FiltrationSimplex vertex(Vertex v) { return {{v, 0, 0}, 0, 0.0}; }
  static FiltrationSimplex edge(Vertex a, Vertex b, double value);
  static FiltrationSimplex triangle(Vertex a, Vertex b, Vertex c, double value);

  std::span<const Vertex> vertex_span() const {
    return {vertices.data(), static_cast<std::size_t>(dim + 1)};
  }

  friend bool operator==(const FiltrationSimplex& a, const FiltrationSimplex& b) {
    return a.dim == b.dim && a.value == b.value &&
           std::equal(a.vertices.begin(), a.vertices.begin() + a.dim + 1, b.vertices.begin());
  }
};

/// Filtration order: (value, dim, lexicographic vertices).
bool filtration_less(const FiltrationSimplex& a, const FiltrationSimplex& b);

struct Edge {
  Vertex u = 0;
  Vertex v = 0;  // u < v
  double value = 0.0;

  FiltrationSimplex simplex() const { return FiltrationSimplex::edge(u, v, value); }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge filtration order: (value, u, v).
inline bool edge_less(const Edge& a, const Edge& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

/// Rips value of a vertex set: 0 for a vertex, otherwise the largest pairwise
/// dissimilarity. Throws ContractViolation on out-of-range or repeated indices.
double rips_value(std::span<const Vertex> vertices, const DissimilarityMatrix& d);

struct ComplexOptions {
  int max_dim = 2;                        // 1 or 2
  std::optional<double> truncation;       // default: enclosing radius
  std::uint64_t simplex_cap = 200'000'000;
};

/// Vietoris-Rips complex truncated at `truncation()`. Vertices and edges are
/// stored explicitly in filtration order; triangles are implicit (enumerated
/// from the matrix on demand) and only materialized by `simplices()`.
class FilteredComplex {
 public:
  std::size_t vertex_count() const noexcept { return matrix_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::uint64_t triangle_count() const noexcept { return triangle_count_; }
  std::uint64_t simplex_count() const noexcept {
    return vertex_count() + edges_.size() + triangle_count_;
  }
  double truncation() const noexcept { return truncation_; }
  int max_dim() const noexcept { return max_dim_; }
  const DissimilarityMatrix& matrix() const noexcept { return matrix_; }

  /// Every simplex in filtration order. Meant for small complexes (tests,
  /// oracles, export); memory is linear in simplex_count().
  std::vector<FiltrationSimplex> simplices() const;

  /// Triangles (a, b, k) with value <= truncation, in vertex order of k.
  template <class Fn>
  void for_each_coface(const Edge& e, Fn&& fn) const {
    if (max_dim_ < 2) return;
    auto ru = matrix_.row(e.u);
    auto rv = matrix_.row(e.v);
    const auto n = static_cast<Vertex>(matrix_.size());
    for (Vertex k = 0; k < n; ++k) {
      if (k == e.u || k == e.v) continue;
      const double value = std::max(e.value, std::max(ru[k], rv[k]));
      if (value <= truncation_) fn(k, value);
    }
  }

 private:
  friend FilteredComplex build_complex(DissimilarityMatrix d, const ComplexOptions& options);

  DissimilarityMatrix matrix_;
  std::vector<Edge> edges_;
  std::uint64_t triangle_count_ = 0;
  double truncation_ = 0.0;
  int max_dim_ = 2;
};

/// Builds the Rips complex up to `max_dim`. Throws ResourceLimitError (with
/// the projected count) when the simplex count exceeds `simplex_cap`, and
/// InputError on a non-positive explicit truncation.
FilteredComplex build_complex(DissimilarityMatrix d, const ComplexOptions& options = {});

/// Number of Rips triangles with value <= threshold.
std::uint64_t count_triangles(const DissimilarityMatrix& d, double threshold);

}  // namespace holeprobe
