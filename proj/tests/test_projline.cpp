#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <stdexcept>
#include <tuple>

#include "pgldes/projline.hpp"

using namespace pgldes;

TEST_CASE("point indexing puts finite codes first and infinity last") {
  const std::uint64_t q = 9;
  for (std::uint64_t i = 0; i <= q; ++i) {
    const ProjPoint pt = ProjPoint::from_index(i, q);
    CHECK(pt.index(q) == i);
    CHECK(pt.is_infinity() == (i == q));
  }
  CHECK(ProjPoint::finite(3) < ProjPoint::infinity());
  CHECK(to_string(ProjPoint::infinity()) == "inf");
}

TEST_CASE("group size matches q^3 - q") {
  CHECK(pgl2_all(Field::make(2, 1)).size() == 6);
  CHECK(pgl2_all(Field::make(3, 1)).size() == 24);
  CHECK(pgl2_all(Field::make(2, 2)).size() == 60);
  CHECK(pgl2_order(5) == 120);
}

TEST_CASE("canonical representatives multiply and invert consistently") {
  const Field f = Field::make(2, 2);
  const auto group = pgl2_all(f);
  const Pgl2 id = pgl2_make(f, 1, 0, 0, 1);
  for (const Pgl2& g : group) {
    CHECK(pgl2_mul(f, g, pgl2_inv(f, g)) == id);
    CHECK(pgl2_mul(f, pgl2_inv(f, g), g) == id);
  }
  // Spot-check associativity on a few triples.
  for (std::size_t i = 0; i < group.size(); i += 7)
    for (std::size_t j = 1; j < group.size(); j += 11) {
      const Pgl2 &g = group[i], &h = group[j], &k = group[group.size() / 2];
      CHECK(pgl2_mul(f, pgl2_mul(f, g, h), k) ==
            pgl2_mul(f, g, pgl2_mul(f, h, k)));
    }
  CHECK_THROWS_AS(pgl2_make(f, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("the action is sharply 3-transitive (exhaustive, small q)") {
  for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{2, 1},
                      {3, 1},
                      {2, 2},
                      {5, 1},
                      {7, 1}}) {
    const Field f = Field::make(p, e);
    const auto pts = all_points(f);
    const auto group = pgl2_all(f);
    // Count, per ordered distinct triple, the group elements realizing it
    // from (inf, 0, 1).  Sharp transitivity says every count is exactly 1.
    std::map<std::tuple<ProjPoint, ProjPoint, ProjPoint>, int> hits;
    const ProjPoint pinf = ProjPoint::infinity();
    const ProjPoint p0 = ProjPoint::finite(0), p1 = ProjPoint::finite(1);
    for (const Pgl2& g : group)
      ++hits[{pgl2_act(f, g, pinf), pgl2_act(f, g, p0), pgl2_act(f, g, p1)}];
    std::uint64_t triples = 0;
    for (const auto& [key, n] : hits) {
      CHECK(n == 1);
      ++triples;
    }
    CHECK(triples == (f.q() + 1) * f.q() * (f.q() - 1));
    CHECK(group.size() == triples);
  }
}

TEST_CASE("map_triple_to_canonical sends the triple to (inf, 0, 1)") {
  const Field f = Field::make(5, 1);
  const auto pts = all_points(f);
  for (const ProjPoint& a : pts)
    for (const ProjPoint& b : pts)
      for (const ProjPoint& c : pts) {
        if (a == b || a == c || b == c) continue;
        const Pgl2 g = map_triple_to_canonical(f, a, b, c);
        CHECK(pgl2_act(f, g, a) == ProjPoint::infinity());
        CHECK(pgl2_act(f, g, b) == ProjPoint::finite(0));
        CHECK(pgl2_act(f, g, c) == ProjPoint::finite(1));
      }
  CHECK_THROWS_AS(map_triple_to_canonical(f, pts[0], pts[0], pts[1]),
                  std::invalid_argument);
}

TEST_CASE("fractional-linear action fixes the four-way convention") {
  const Field f = Field::make(7, 1);
  // g = (0 1; 1 0) is x -> 1/x: swaps 0 and inf.
  const Pgl2 g = pgl2_make(f, 0, 1, 1, 0);
  CHECK(pgl2_act(f, g, ProjPoint::finite(0)) == ProjPoint::infinity());
  CHECK(pgl2_act(f, g, ProjPoint::infinity()) == ProjPoint::finite(0));
  CHECK(pgl2_act(f, g, ProjPoint::finite(3)) == ProjPoint::finite(f.inv(3)));
  // Translation x -> x + 2 fixes infinity.
  const Pgl2 t = pgl2_make(f, 1, 2, 0, 1);
  CHECK(pgl2_act(f, t, ProjPoint::infinity()) == ProjPoint::infinity());
  CHECK(pgl2_act(f, t, ProjPoint::finite(6)) == ProjPoint::finite(1));
}
