#pragma once

// Test-only oracles. Everything here works on explicitly enumerated simplices
// and dense Z2 linear algebra, independent of the library's reduction code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "holeprobe/metricspace.hpp"

namespace oracle {

using holeprobe::DissimilarityMatrix;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void add(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }
  std::optional<std::size_t> highest() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w] != 0) return w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(words_[w]));
    }
    return std::nullopt;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Rank of a set of Z2 column vectors by Gaussian elimination.
inline std::size_t rank(std::vector<Bits> columns) {
  std::map<std::size_t, Bits> basis;  // pivot -> vector
  std::size_t r = 0;
  for (Bits& c : columns) {
    while (auto h = c.highest()) {
      auto it = basis.find(*h);
      if (it == basis.end()) {
        basis.emplace(*h, c);
        ++r;
        break;
      }
      c.add(it->second);
    }
  }
  return r;
}

struct Simplices {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> triangles;
};

// Rips simplices of dimension 1 and 2 with value <= t.
inline Simplices rips_at(const DissimilarityMatrix& d, double t) {
  const int n = static_cast<int>(d.size());
  Simplices s;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d(i, j) <= t) s.edges.emplace_back(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (d(i, j) <= t && d(i, k) <= t && d(j, k) <= t) s.triangles.push_back({i, j, k});
  return s;
}

// Betti number k in {0, 1} of the Rips complex at scale t.
inline int betti(const DissimilarityMatrix& d, double t, int k) {
  const std::size_t n = d.size();
  if (n > 64) throw std::invalid_argument("oracle scale exceeded");
  const Simplices s = rips_at(d, t);
  std::map<std::pair<int, int>, std::size_t> edge_index;
  for (std::size_t e = 0; e < s.edges.size(); ++e) edge_index[s.edges[e]] = e;

  std::vector<Bits> d1;
  for (auto [i, j] : s.edges) {
    Bits col(n);
    col.flip(static_cast<std::size_t>(i));
    col.flip(static_cast<std::size_t>(j));
    d1.push_back(col);
  }
  const auto r1 = rank(d1);
  if (k == 0) return static_cast<int>(n - r1);

  std::vector<Bits> d2;
  for (auto [a, b, c] : s.triangles) {
    Bits col(s.edges.size());
    col.flip(edge_index.at({a, b}));
    col.flip(edge_index.at({a, c}));
    col.flip(edge_index.at({b, c}));
    d2.push_back(col);
  }
  return static_cast<int>(s.edges.size() - r1 - rank(d2));
}

// Sorted distinct values of all Rips edges and triangles (vertex value 0).
inline std::vector<double> critical_values(const DissimilarityMatrix& d) {
  std::set<double> v{0.0};
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) v.insert(d(i, j));
  return {v.begin(), v.end()};
}

// Death of the base class created by edge (u, v) in the image of
// H1(Rips(P)) -> H1(Rips(P u Q)), where P = the first `p_count` points of the
// combined matrix. A class created by the edge is a cycle "edge + earlier base
// edges"; it dies at the first scale t at which it lies in
//   B1(Rips(P u Q)_t) + Z1(base edges strictly before the edge),
// which does not depend on which such cycle is taken. Returns +inf if it never
// dies up to the largest triangle value.
inline double image_death(const DissimilarityMatrix& pq, std::size_t p_count, int u, int v) {
  const std::size_t n = pq.size();
  if (n > 16) throw std::invalid_argument("oracle scale exceeded");
  if (u > v) std::swap(u, v);
  const double b = pq(u, v);
  auto base_before = [&](int i, int j) {
    // base filtration order (value, lexicographic)
    if (static_cast<std::size_t>(j) >= p_count) return false;
    return std::make_tuple(pq(i, j), i, j) < std::make_tuple(b, u, v);
  };

  // All edges of the full complex get fixed coordinates.
  std::map<std::pair<int, int>, std::size_t> index;
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      index[{i, j}] = all.size();
      all.emplace_back(i, j);
    }
  const std::size_t m = all.size();

  // Some cycle through (u, v): any path between u and v in the earlier base
  // graph, found by breadth-first search.
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : all)
    if (base_before(i, j)) {
      adj[static_cast<std::size_t>(i)].push_back(j);
      adj[static_cast<std::size_t>(j)].push_back(i);
    }
  std::vector<int> parent(n, -2);
  std::vector<int> queue{u};
  parent[static_cast<std::size_t>(u)] = -1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int y : adj[static_cast<std::size_t>(queue[q])])
      if (parent[static_cast<std::size_t>(y)] == -2) {
        parent[static_cast<std::size_t>(y)] = queue[q];
        queue.push_back(y);
      }
  if (parent[static_cast<std::size_t>(v)] == -2) throw std::invalid_argument("edge creates no cycle");
  Bits z(m);
  z.flip(index.at({u, v}));
  for (int x = v; x != u; x = parent[static_cast<std::size_t>(x)]) {
    const int p = parent[static_cast<std::size_t>(x)];
    z.flip(index.at({std::min(x, p), std::max(x, p)}));
  }

  // Cycle space of the earlier base graph: fundamental cycles of a BFS forest.
  std::vector<Bits> earlier_cycles;
  {
    std::vector<int> par(n, -2);
    for (int root = 0; root < static_cast<int>(n); ++root) {
      if (par[static_cast<std::size_t>(root)] != -2) continue;
      par[static_cast<std::size_t>(root)] = -1;
      std::vector<int> qq{root};
      for (std::size_t q = 0; q < qq.size(); ++q)
        for (int y : adj[static_cast<std::size_t>(qq[q])])
          if (par[static_cast<std::size_t>(y)] == -2) {
            par[static_cast<std::size_t>(y)] = qq[q];
            qq.push_back(y);
          }
    }
    auto path_to_root = [&](int x, Bits& acc) {
      for (; par[static_cast<std::size_t>(x)] >= 0; x = par[static_cast<std::size_t>(x)]) {
        const int p = par[static_cast<std::size_t>(x)];
        acc.flip(index.at({std::min(x, p), std::max(x, p)}));
      }
    };
    for (auto [i, j] : all) {
      if (!base_before(i, j)) continue;
      if (par[static_cast<std::size_t>(j)] == i || par[static_cast<std::size_t>(i)] == j) continue;
      Bits c(m);
      c.flip(index.at({i, j}));
      path_to_root(i, c);
      path_to_root(j, c);
      earlier_cycles.push_back(c);
    }
  }

  std::vector<double> candidates;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = i + 1; j < static_cast<int>(n); ++j)
      for (int k = j + 1; k < static_cast<int>(n); ++k) {
        const double t = std::max({pq(i, j), pq(i, k), pq(j, k)});
        if (t >= b) candidates.push_back(t);
      }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (double t : candidates) {
    std::vector<Bits> span = earlier_cycles;
    for (int i = 0; i < static_cast<int>(n); ++i)
      for (int j = i + 1; j < static_cast<int>(n); ++j)
        for (int k = j + 1; k < static_cast<int>(n); ++k) {
          if (std::max({pq(i, j), pq(i, k), pq(j, k)}) > t) continue;
          Bits col(m);
          col.flip(index.at({i, j}));
          col.flip(index.at({i, k}));
          col.flip(index.at({j, k}));
          span.push_back(col);
        }
    const std::size_t without = rank(span);
    span.push_back(z);
    if (rank(span) == without) return t;
  }
  return std::numeric_limits<double>::infinity();
}

// Textbook left-to-right reduction of the boundary matrix of triangles
// (columns, filtration order) against edges (rows, filtration order), for the
// complex of all simplices with value <= truncation. Returns
// (birth edge, death triangle) pairs including zero-persistence ones, keyed by
// vertex tuples.
struct Pair {
  std::pair<int, int> edge;
  std::array<int, 3> triangle;
  double birth;
  double death;
};

inline std::vector<Pair> boundary_pairs(const DissimilarityMatrix& d, double truncation) {
  const Simplices s = rips_at(d, truncation);
  auto edge_key = [&](std::pair<int, int> e) { return std::make_tuple(d(e.first, e.second), e.first, e.second); };
  auto edges = s.edges;
  std::sort(edges.begin(), edges.end(), [&](auto a, auto b) { return edge_key(a) < edge_key(b); });
  auto tri_value = [&](const std::array<int, 3>& t) {
    return std::max({d(t[0], t[1]), d(t[0], t[2]), d(t[1], t[2])});
  };
  auto tris = s.triangles;
  std::sort(tris.begin(), tris.end(), [&](auto a, auto b) {
    return std::make_tuple(tri_value(a), a) < std::make_tuple(tri_value(b), b);
  });
  std::map<std::pair<int, int>, std::size_t> row;
  for (std::size_t r = 0; r < edges.size(); ++r) row[edges[r]] = r;

  std::vector<Pair> pairs;
  std::map<std::size_t, Bits> low_owner;
  for (const auto& t : tris) {
    Bits col(edges.size());
    col.flip(row.at({t[0], t[1]}));
    col.flip(row.at({t[0], t[2]}));
    col.flip(row.at({t[1], t[2]}));
    while (auto h = col.highest()) {
      auto it = low_owner.find(*h);
      if (it == low_owner.end()) {
        low_owner.emplace(*h, col);
        const auto e = edges[*h];
        pairs.push_back({e, t, d(e.first, e.second), tri_value(t)});
        break;
      }
      col.add(it->second);
    }
  }
  return pairs;
}


// Left-to-right reduction of the vertex-edge boundary matrix with edges in
// filtration order, tracking column operations. For every edge whose column
// reduces to zero, returns the support of its V column (a cycle).
inline std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> boundary_cycles(
    const DissimilarityMatrix& d, double truncation) {
  const std::size_t n = d.size();
  auto edges = rips_at(d, truncation).edges;
  std::sort(edges.begin(), edges.end(), [&](auto a, auto b) {
    return std::make_tuple(d(a.first, a.second), a.first, a.second) <
           std::make_tuple(d(b.first, b.second), b.first, b.second);
  });
  std::map<std::size_t, std::pair<Bits, Bits>> owner;  // low -> (R, V)
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> cycles;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    Bits r(n);
    r.flip(static_cast<std::size_t>(edges[j].first));
    r.flip(static_cast<std::size_t>(edges[j].second));
    Bits v(edges.size());
    v.flip(j);
    for (;;) {
      const auto h = r.highest();
      if (!h) {
        std::vector<std::pair<int, int>> support;
        for (std::size_t k = 0; k < edges.size(); ++k)
          if (v.test(k)) support.push_back(edges[k]);
        std::sort(support.begin(), support.end());
        cycles.emplace(edges[j], std::move(support));
        break;
      }
      auto it = owner.find(*h);
      if (it == owner.end()) {
        owner.emplace(*h, std::make_pair(r, v));
        break;
      }
      r.add(it->second.first);
      v.add(it->second.second);
    }
  }
  return cycles;
}

}  // namespace oracle
