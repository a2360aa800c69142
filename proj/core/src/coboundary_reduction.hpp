#pragma once

// Implicit coboundary-matrix reduction over Z2 for edge columns.
//
// Columns are edges processed from last to first in a caller-supplied row
// order; rows are triangles in filtration order, enumerated on the fly from
// the dissimilarity matrix. The pivot of a column is its earliest triangle.
// This is the anti-transpose of the boundary matrix of triangles with edge
// rows in the same order, so the (edge, triangle) pivot pairs equal those of
// the left-to-right boundary reduction. Edges in the Kruskal forest of the
// row order have zero reduced boundary columns and are cleared up front.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "holeprobe/filtration.hpp"
#include "holeprobe/metricspace.hpp"

namespace holeprobe::detail {

inline std::uint64_t triangle_key(Vertex a, Vertex b, Vertex c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 42) | (std::uint64_t{b} << 21) | std::uint64_t{c};
}

inline std::array<Vertex, 3> triangle_vertices(std::uint64_t key) {
  constexpr std::uint64_t mask = (std::uint64_t{1} << 21) - 1;
  return {static_cast<Vertex>(key >> 42), static_cast<Vertex>((key >> 21) & mask),
          static_cast<Vertex>(key & mask)};
}

struct TriangleEntry {
  double value = 0.0;
  std::uint64_t key = 0;

  FiltrationSimplex simplex() const {
    auto v = triangle_vertices(key);
    return {v, 2, value};
  }
};

// Filtration order on triangles: value, then lexicographic vertices (the key
// packs sorted vertices most-significant first).
inline bool operator<(const TriangleEntry& a, const TriangleEntry& b) {
  return a.value < b.value || (a.value == b.value && a.key < b.key);
}

enum class ColumnStatus : std::uint8_t {
  skipped,    // above threshold, or below the lowest requested row
  forest,     // cleared: Kruskal forest edge
  paired,     // reduced column has a pivot triangle
  essential,  // reduced column is zero
};

struct EdgePairing {
  std::vector<ColumnStatus> status;          // by row position
  std::vector<TriangleEntry> pivot;          // valid where status == paired
};

// `rows` lists edges in row order (position 0 first). Only triangles with
// value <= threshold exist. Columns at positions < lowest_needed are not
// reduced (their status is `skipped`); they are never required to reduce the
// columns at or above it.
EdgePairing reduce_coboundaries(const DissimilarityMatrix& d, std::span<const Edge> rows,
                                double threshold, std::size_t lowest_needed = 0);

// Kruskal forest membership of `rows` taken in order.
std::vector<bool> kruskal_forest(std::size_t vertex_count, std::span<const Edge> rows);

}  // namespace holeprobe::detail
