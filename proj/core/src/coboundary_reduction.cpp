#include "coboundary_reduction.hpp"

#include <functional>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace holeprobe::detail {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool link(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct LaterFirst {
  bool operator()(const TriangleEntry& a, const TriangleEntry& b) const { return b < a; }
};

using WorkingColumn = std::priority_queue<TriangleEntry, std::vector<TriangleEntry>, LaterFirst>;

// Removes cancelling pairs at the top; returns the surviving minimum, if any,
// leaving it on the heap.
std::optional<TriangleEntry> get_pivot(WorkingColumn& column) {
  while (!column.empty()) {
    const TriangleEntry top = column.top();
    column.pop();
    if (!column.empty() && column.top().key == top.key) {
      column.pop();
      continue;
    }
    column.push(top);
    return top;
  }
  return std::nullopt;
}

class Reducer {
 public:
  Reducer(const DissimilarityMatrix& d, std::span<const Edge> rows, double threshold)
      : d_(d), rows_(rows), threshold_(threshold) {}

  template <class Fn>
  void for_each_coface(const Edge& e, Fn&& fn) const {
    auto ru = d_.row(e.u);
    auto rv = d_.row(e.v);
    const auto n = static_cast<Vertex>(d_.size());
    for (Vertex k = 0; k < n; ++k) {
      if (k == e.u || k == e.v) continue;
      const double value = std::max(e.value, std::max(ru[k], rv[k]));
      if (value <= threshold_) fn(TriangleEntry{value, triangle_key(e.u, e.v, k)});
    }
  }

  std::optional<TriangleEntry> min_coface(const Edge& e) const {
    std::optional<TriangleEntry> best;
    auto ru = d_.row(e.u);
    auto rv = d_.row(e.v);
    const auto n = static_cast<Vertex>(d_.size());
    for (Vertex k = 0; k < n; ++k) {
      if (k == e.u || k == e.v) continue;
      const double value = std::max(e.value, std::max(ru[k], rv[k]));
      if (value > threshold_ || (best && value > best->value)) continue;
      const TriangleEntry entry{value, triangle_key(e.u, e.v, k)};
      if (!best || entry < *best) best = entry;
    }
    return best;
  }

  void push_coboundary(WorkingColumn& column, std::uint32_t position) const {
    for_each_coface(rows_[position], [&](const TriangleEntry& t) { column.push(t); });
  }

  EdgePairing run(std::size_t lowest_needed) {
    const std::size_t m = rows_.size();
    EdgePairing result;
    result.status.assign(m, ColumnStatus::skipped);
    result.pivot.assign(m, TriangleEntry{});

    const std::vector<bool> forest = kruskal_forest(d_.size(), rows_);

    std::unordered_map<std::uint64_t, std::uint32_t> pivot_owner;
    // Column operations of non-trivially reduced columns: the reduced column
    // of `position` is the sum of the coboundaries of these rows.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> reduction;
    WorkingColumn column;
    std::vector<std::uint32_t> ops;

    for (std::size_t pos = m; pos-- > lowest_needed;) {
      const auto position = static_cast<std::uint32_t>(pos);
      const Edge& e = rows_[pos];
      if (e.value > threshold_) continue;
      if (forest[pos]) {
        result.status[pos] = ColumnStatus::forest;
        continue;
      }

      std::optional<TriangleEntry> pivot = min_coface(e);
      if (pivot && pivot_owner.contains(pivot->key)) {
        column = WorkingColumn{};
        ops.assign(1, position);
        push_coboundary(column, position);
        for (pivot = get_pivot(column); pivot; pivot = get_pivot(column)) {
          auto owner = pivot_owner.find(pivot->key);
          if (owner == pivot_owner.end()) break;
          auto recorded = reduction.find(owner->second);
          if (recorded == reduction.end()) {
            ops.push_back(owner->second);
            push_coboundary(column, owner->second);
          } else {
            for (std::uint32_t r : recorded->second) {
              ops.push_back(r);
              push_coboundary(column, r);
            }
          }
        }
        if (pivot) {
          std::sort(ops.begin(), ops.end());
          std::vector<std::uint32_t> kept;
          for (std::size_t i = 0; i < ops.size();) {
            std::size_t j = i;
            while (j < ops.size() && ops[j] == ops[i]) ++j;
            if ((j - i) % 2 == 1) kept.push_back(ops[i]);
            i = j;
          }
          if (kept.size() > 1 || kept.front() != position) reduction.emplace(position, std::move(kept));
        }
      }

      if (pivot) {
        pivot_owner.emplace(pivot->key, position);
        result.status[pos] = ColumnStatus::paired;
        result.pivot[pos] = *pivot;
      } else {
        result.status[pos] = ColumnStatus::essential;
      }
    }
    return result;
  }

 private:
  const DissimilarityMatrix& d_;
  std::span<const Edge> rows_;
  double threshold_;
};

}  // namespace

std::vector<bool> kruskal_forest(std::size_t vertex_count, std::span<const Edge> rows) {
  UnionFind components(vertex_count);
  std::vector<bool> forest(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) forest[i] = components.link(rows[i].u, rows[i].v);
  return forest;
}

EdgePairing reduce_coboundaries(const DissimilarityMatrix& d, std::span<const Edge> rows,
                                double threshold, std::size_t lowest_needed) {
  return Reducer(d, rows, threshold).run(lowest_needed);
}

}  // namespace holeprobe::detail
