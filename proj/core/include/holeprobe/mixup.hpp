#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "holeprobe/filtration.hpp"
#include "holeprobe/metricspace.hpp"
#include "holeprobe/persistence.hpp"

namespace holeprobe {

/// A finite H1 bar of the base cloud P together with its death d' in the
/// image of H1(Rips(P)) -> H1(Rips(P u Q)).
struct MixupBar {
  PersistenceBar base;
  double image_death = 0.0;
  double mixup = 0.0;  // (d - d') / (d - b)
  FiltrationSimplex mixup_simplex;
  int q_vertex_count = 0;  // vertices of mixup_simplex that belong to Q
};

struct MixupBarcode {
  std::vector<MixupBar> bars;                  // same order as the base diagram
  std::vector<PersistenceBar> infinite_bars;   // no finite death; excluded from mixup
  double total_mixup = 0.0;
  std::size_t p_count = 0;
  std::size_t q_count = 0;
};

/// (|P| + |Q|)-point matrix with P first. The leading block is computed by
/// the same routine as dissimilarity_matrix(p), so it is bit-identical.
/// Throws InputError on a dimension mismatch; an empty Q returns P's matrix.
DissimilarityMatrix combined_matrix(const PointCloud& p, const PointCloud& q,
                                    Metric metric = Metric::cosine);

/// Same, reusing a precomputed P matrix; only Q-incident entries are computed.
DissimilarityMatrix combined_matrix(const DissimilarityMatrix& p_matrix, const PointCloud& p,
                                    const PointCloud& q, Metric metric = Metric::cosine);

/// Extends a precomputed P matrix by |Q| rows of length |P| + |Q| (row-major),
/// row k holding the dissimilarities of q_k to every P point then every Q point.
DissimilarityMatrix extend_matrix(const DissimilarityMatrix& p_matrix, std::span<const double> q_rows,
                                  std::size_t q_count);

/// Rips(P u Q) complex suitable for image_persistence_h1 against `p_complex`:
/// truncated where `p_complex` is.
FilteredComplex build_combined_complex(DissimilarityMatrix pq_matrix,
                                       const FilteredComplex& p_complex,
                                       std::uint64_t simplex_cap = ComplexOptions{}.simplex_cap);

/// Image deaths of every finite bar of `p_diagram`. The reduction uses P's
/// edges (in P's filtration order) as the leading rows followed by the
/// Q-incident edges, and triangles of P u Q as columns. Throws
/// ContractViolation when the leading block of `pq_complex` does not
/// reproduce `p_complex`.
MixupBarcode image_persistence_h1(const FilteredComplex& p_complex,
                                  const FilteredComplex& pq_complex,
                                  const PersistenceDiagram& p_diagram);

double total_mixup(const MixupBarcode& barcode);

}  // namespace holeprobe
