#include "holeprobe/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holeprobe/errors.hpp"

namespace holeprobe {

FiltrationSimplex FiltrationSimplex::edge(Vertex a, Vertex b, double value) {
  if (a > b) std::swap(a, b);
  return {{a, b, 0}, 1, value};
}

FiltrationSimplex FiltrationSimplex::triangle(Vertex a, Vertex b, Vertex c, double value) {
  std::array<Vertex, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {v, 2, value};
}

bool filtration_less(const FiltrationSimplex& a, const FiltrationSimplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  const auto n = static_cast<std::size_t>(a.dim + 1);
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + n,
                                      b.vertices.begin(), b.vertices.begin() + n);
}

double rips_value(std::span<const Vertex> vertices, const DissimilarityMatrix& d) {
  double value = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= d.size()) {
      throw ContractViolation("vertex " + std::to_string(vertices[a]) + " out of range for " +
                              std::to_string(d.size()) + " points");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (vertices[a] == vertices[b]) throw ContractViolation("repeated vertex in simplex");
      value = std::max(value, d(vertices[a], vertices[b]));
    }
  }
  return value;
}

std::uint64_t count_triangles(const DissimilarityMatrix& d, double threshold) {
  const std::size_t n = d.size();
  std::uint64_t count = 0;
  std::vector<std::size_t> neighbours;
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = d.row(i);
    neighbours.clear();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ri[j] <= threshold) neighbours.push_back(j);
    }
    for (std::size_t a = 0; a < neighbours.size(); ++a) {
      auto rj = d.row(neighbours[a]);
      for (std::size_t b = a + 1; b < neighbours.size(); ++b) {
        if (rj[neighbours[b]] <= threshold) ++count;
      }
    }
  }
  return count;
}

FilteredComplex build_complex(DissimilarityMatrix d, const ComplexOptions& options) {
  if (options.max_dim != 1 && options.max_dim != 2) {
    throw ContractViolation("max_dim must be 1 or 2");
  }
  const std::size_t n = d.size();
  if (n == 0) throw InputError("cannot build a complex on zero points");
  if (n >= (std::size_t{1} << 21)) throw InputError("too many points for triangle encoding");

  double truncation = 0.0;
  if (options.truncation) {
    truncation = *options.truncation;
    if (!(truncation > 0.0)) throw InputError("truncation must be positive");
  } else {
    truncation = enclosing_radius(d);
  }

  FilteredComplex complex;
  complex.truncation_ = truncation;
  complex.max_dim_ = options.max_dim;

  std::uint64_t edge_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= truncation) ++edge_count;
    }
  }
  const std::uint64_t triangles = options.max_dim == 2 ? count_triangles(d, truncation) : 0;
  const std::uint64_t projected = n + edge_count + triangles;
  if (projected > options.simplex_cap) {
    throw ResourceLimitError("complex would contain " + std::to_string(projected) +
                                 " simplices, above the cap of " +
                                 std::to_string(options.simplex_cap),
                             projected);
  }

  complex.edges_.reserve(edge_count);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= truncation) {
        complex.edges_.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), d(i, j)});
      }
    }
  }
  std::sort(complex.edges_.begin(), complex.edges_.end(), edge_less);
  complex.triangle_count_ = triangles;
  complex.matrix_ = std::move(d);
  return complex;
}

std::vector<FiltrationSimplex> FilteredComplex::simplices() const {
  std::vector<FiltrationSimplex> out;
  out.reserve(simplex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) out.push_back(FiltrationSimplex::vertex(v));
  for (const Edge& e : edges_) out.push_back(e.simplex());
  if (max_dim_ == 2) {
    const auto n = static_cast<Vertex>(vertex_count());
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if (matrix_(a, b) > truncation_) continue;
        for (Vertex c = b + 1; c < n; ++c) {
          const double value = std::max({matrix_(a, b), matrix_(a, c), matrix_(b, c)});
          if (value <= truncation_) out.push_back({{a, b, c}, 2, value});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), filtration_less);
  return out;
}

}  // namespace holeprobe
