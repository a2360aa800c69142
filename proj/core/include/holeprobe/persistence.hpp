#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "holeprobe/filtration.hpp"

namespace holeprobe {

using EdgeVertices = std::array<Vertex, 2>;

/// One H1 feature. `death` is +infinity (and `death_simplex` empty) when the
/// class survives the truncation of the complex.
struct PersistenceBar {
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  FiltrationSimplex birth_simplex;
  std::optional<FiltrationSimplex> death_simplex;
  std::vector<EdgeVertices> representative;

  double persistence() const { return death - birth; }
  bool finite() const { return death_simplex.has_value(); }

  friend bool operator==(const PersistenceBar&, const PersistenceBar&) = default;
};

/// Bars sorted by persistence, longest first; zero-persistence pairs are not
/// included.
struct PersistenceDiagram {
  std::vector<PersistenceBar> bars;
  int homology_dim = 1;

  std::size_t finite_count() const;
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Dimension-1 persistent homology over Z2. Requires a complex built with
/// max_dim == 2 (ContractViolation otherwise).
PersistenceDiagram reduce_h1(const FilteredComplex& complex);

/// Cycle created by `birth_edge`: the edge plus the path joining its endpoints
/// in the spanning forest of earlier edges. This is the dim-1 boundary
/// reduction's column-operation (V) support for that edge.
std::vector<EdgeVertices> birth_cycle(const FilteredComplex& complex, const Edge& birth_edge);

/// Representative stored on bars of `reduce_h1`; see the implementation notes
/// on which cycle is chosen.
std::vector<EdgeVertices> representative_cycle(const FilteredComplex& complex,
                                               const PersistenceBar& bar);

/// True when every vertex has even degree in the edge multiset.
bool is_z2_cycle(std::span<const EdgeVertices> edges);

/// Bar order used by diagrams: persistence descending, then birth, then birth
/// edge vertices.
bool bar_order(const PersistenceBar& a, const PersistenceBar& b);

}  // namespace holeprobe
