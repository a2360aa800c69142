#include <algorithm>
#include <cmath>
#include <random>
#include <limits>
#include <map>

#include "doctest.h"
#include "holeprobe/errors.hpp"
#include "holeprobe/filtration.hpp"
#include "support/fixtures.hpp"

using namespace holeprobe;

namespace {

DissimilarityMatrix square_matrix() {
  return dissimilarity_matrix(fixtures::unit_square(), Metric::euclidean);
}

std::size_t count_dim(const std::vector<FiltrationSimplex>& s, int dim) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](const auto& x) { return x.dim == dim; }));
}

}  // namespace

TEST_SUITE("filtration") {

TEST_CASE("rips values on the square") {
  const auto d = square_matrix();
  const std::vector<Vertex> v{3}, e{0, 1}, t{0, 1, 2};
  CHECK(rips_value(v, d) == 0.0);
  CHECK(rips_value(e, d) == 1.0);
  CHECK(rips_value(t, d) == std::sqrt(2.0));
  const std::vector<Vertex> bad{0, 7};
  CHECK_THROWS_AS(rips_value(bad, d), ContractViolation);
}

TEST_CASE("equilateral triple") {
  DissimilarityMatrix d(3);
  d.set(0, 1, 1);
  d.set(0, 2, 1);
  d.set(1, 2, 1);
  const auto c = build_complex(d, {.max_dim = 2, .truncation = 2.0});
  const auto s = c.simplices();
  REQUIRE(s.size() == 7);
  CHECK(count_dim(s, 0) == 3);
  CHECK(count_dim(s, 1) == 3);
  CHECK(count_dim(s, 2) == 1);
  CHECK(s.back() == FiltrationSimplex::triangle(0, 1, 2, 1.0));
}

TEST_CASE("square at its enclosing radius") {
  const auto c = build_complex(square_matrix());
  CHECK(c.truncation() == std::sqrt(2.0));
  const auto s = c.simplices();
  CHECK(count_dim(s, 0) == 4);
  CHECK(count_dim(s, 1) == 6);
  CHECK(count_dim(s, 2) == 4);
  std::size_t at_one = 0;
  for (const auto& x : s) {
    if (x.dim == 1 && x.value == 1.0) ++at_one;
    if (x.dim == 2) CHECK(x.value == std::sqrt(2.0));
  }
  CHECK(at_one == 4);
}

TEST_CASE("square truncated below the diagonals") {
  const auto c = build_complex(square_matrix(), {.truncation = 1.2});
  CHECK(c.edges().size() == 4);
  CHECK(c.triangle_count() == 0);
  CHECK(c.simplices().size() == 8);
}

TEST_CASE("order, faces and counts on random matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 8);
    const auto d = fixtures::random_matrix(rng, n, trial % 2 == 0);
    const auto c = build_complex(d, {.truncation = std::numeric_limits<double>::infinity()});
    const auto s = c.simplices();
    CHECK(c.edges().size() == n * (n - 1) / 2);
    CHECK(c.triangle_count() == n * (n - 1) * (n - 2) / 6);
    CHECK(s.size() == c.simplex_count());
    std::map<std::vector<Vertex>, std::size_t> position;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) {
        CHECK(filtration_less(s[k - 1], s[k]));
        CHECK(s[k - 1].value <= s[k].value);
      }
      const auto span = s[k].vertex_span();
      position[{span.begin(), span.end()}] = k;
      for (std::size_t drop = 0; s[k].dim > 0 && drop < span.size(); ++drop) {
        std::vector<Vertex> face;
        for (std::size_t m = 0; m < span.size(); ++m)
          if (m != drop) face.push_back(span[m]);
        REQUIRE(position.count(face) == 1);
        CHECK(position[face] < k);
      }
    }
    CHECK(s == build_complex(d, {.truncation = std::numeric_limits<double>::infinity()}).simplices());
  }
}

TEST_CASE("resource cap reports the projected count") {
  std::mt19937_64 rng(1);
  const auto d = fixtures::random_matrix(rng, 20, false);
  try {
    build_complex(d, {.truncation = 3.0, .simplex_cap = 100});
    FAIL("expected ResourceLimitError");
  } catch (const ResourceLimitError& e) {
    CHECK(e.projected() == 20 + 190 + 1140);
  }
}

TEST_CASE("invalid options") {
  const auto d = square_matrix();
  CHECK_THROWS_AS(build_complex(d, {.truncation = 0.0}), InputError);
  CHECK_THROWS_AS(build_complex(d, {.max_dim = 3}), ContractViolation);
  const auto c1 = build_complex(d, {.max_dim = 1});
  CHECK(c1.triangle_count() == 0);
  CHECK(c1.edges().size() == 6);
}

TEST_CASE("triangle count agrees with enumeration") {
  std::mt19937_64 rng(8);
  const auto d = fixtures::random_matrix(rng, 14, true);
  for (double t : {0.25, 0.75, 1.0, 1.5, 2.0}) {
    std::uint64_t brute = 0;
    for (std::size_t i = 0; i < 14; ++i)
      for (std::size_t j = i + 1; j < 14; ++j)
        for (std::size_t k = j + 1; k < 14; ++k)
          if (std::max({d(i, j), d(i, k), d(j, k)}) <= t) ++brute;
    CHECK(count_triangles(d, t) == brute);
  }
}

}
