#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "pgldes/gf.hpp"
#include "pgldes/util.hpp"

using namespace pgldes;

namespace {
const std::vector<std::pair<std::uint64_t, std::uint64_t>> kSmallFields = {
    {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2},
    {11, 1}, {13, 1}, {2, 4}, {5, 2}, {3, 3}, {2, 5}, {7, 2}, {3, 4}};
}

TEST_CASE("default moduli are the lex-smallest irreducibles") {
  // Frozen values: constant term first, monic.
  CHECK(Field::make(3, 2).modulus() == std::vector<Code>{1, 0, 1});
  CHECK(Field::make(2, 3).modulus() == std::vector<Code>{1, 0, 1, 1});
  CHECK(Field::make(3, 3).modulus() == std::vector<Code>{1, 0, 2, 1});
  CHECK(Field::make(2, 4).modulus() == std::vector<Code>{1, 0, 0, 1, 1});
  // A prime field has the trivial modulus X - 0 shifted to degree 1 form.
  CHECK(Field::make(7, 1).modulus().size() == 2);
}

TEST_CASE("construction is deterministic and round-trips through the spec") {
  for (auto [p, e] : kSmallFields) {
    const Field a = Field::make(p, e);
    const Field b = Field::make(p, e);
    CHECK(a == b);
    CHECK(a.spec_string() == b.spec_string());
    const Field c = Field::parse(a.spec_string());
    CHECK(c == a);
    CHECK(c.modulus() == a.modulus());
  }
  CHECK(Field::parse("3^2").q() == 9);
  CHECK(Field::parse("3^2:1,0,1").modulus() == std::vector<Code>{1, 0, 1});
}

TEST_CASE("bad specs are rejected") {
  CHECK_THROWS_AS(Field::parse("4^2"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("6^1"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("nonsense"), std::invalid_argument);
  // x^2 + 1 is reducible over F_5 (2^2 = -1).
  CHECK_THROWS_AS(Field::parse("5^2:1,0,1"), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3, 2, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 21), std::invalid_argument);  // over the cap
}

TEST_CASE("every element satisfies x^q = x, exhaustively") {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> all81 = {
      {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1},
      {13, 1}, {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1},
      {31, 1}, {2, 5}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}, {53, 1},
      {59, 1}, {61, 1}, {2, 6}, {67, 1}, {71, 1}, {73, 1}, {79, 1}, {3, 4}};
  for (auto [p, e] : all81) {
    const Field f = Field::make(p, e);
    for (Code x = 0; x < f.q(); ++x) {
      CHECK(f.pow(x, static_cast<long long>(f.q())) == x);
      if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
    }
  }
}

TEST_CASE("field axioms hold on random triples") {
  std::mt19937_64 rng(kDefaultSeed);
  for (auto [p, e] : kSmallFields) {
    const Field f = Field::make(p, e);
    for (int i = 0; i < 200; ++i) {
      const Code a = rng() % f.q(), b = rng() % f.q(), c = rng() % f.q();
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.sub(a, a) == 0);
      CHECK(f.add(a, f.neg(a)) == 0);
    }
  }
}

TEST_CASE("frobenius is the p-power map and has period e") {
  for (auto [p, e] : kSmallFields) {
    const Field f = Field::make(p, e);
    for (Code x = 0; x < f.q(); ++x) {
      CHECK(f.frobenius(x, 1) == f.pow(x, static_cast<long long>(p)));
      CHECK(f.frobenius(x, e) == x);
    }
  }
}

TEST_CASE("digits, generator, squares") {
  const Field f = Field::make(3, 3);
  for (Code x = 0; x < f.q(); ++x) {
    CHECK(f.from_digits(f.digits(x)) == x);
    CHECK(f.digits(x).size() == 3);
  }
  const Code g = f.generator();
  // The generator really has order q-1: no proper divisor kills it.
  for (std::uint64_t d = 1; d < f.q() - 1; ++d)
    if ((f.q() - 1) % d == 0)
      CHECK(f.pow(g, static_cast<long long>(d)) != 1);
  // Squares are exactly the even powers of the generator.
  std::uint64_t squares = 0;
  for (Code x = 1; x < f.q(); ++x)
    if (f.is_square(x)) ++squares;
  CHECK(squares == (f.q() - 1) / 2);
}

TEST_CASE("multiplicative subgroups and subfields") {
  const Field f = Field::make(2, 4);
  const auto u5 = f.mult_subgroup(5);
  REQUIRE(u5.size() == 5);
  CHECK(std::is_sorted(u5.begin(), u5.end()));
  for (Code x : u5) CHECK(f.pow(x, 5) == 1);
  CHECK_THROWS_AS(f.mult_subgroup(4), std::invalid_argument);  // 4 does not divide 15

  const auto f4 = f.subfield(2);
  REQUIRE(f4.size() == 4);
  for (Code x : f4)
    for (Code y : f4) {
      CHECK(std::binary_search(f4.begin(), f4.end(), f.add(x, y)));
      CHECK(std::binary_search(f4.begin(), f4.end(), f.mul(x, y)));
    }
  CHECK_THROWS_AS(f.subfield(3), std::invalid_argument);
}

TEST_CASE("quadratic extension arithmetic and conjugation") {
  for (auto [p, e] : kSmallFields) {
    const Field f = Field::make(p, e);
    if (f.q() > 32) continue;
    const ExtField ext(f);
    CHECK(ext.size() == f.q() * f.q());
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 100; ++i) {
      const Code x = rng() % ext.size(), y = rng() % ext.size();
      CHECK(ext.mul(x, y) == ext.mul(y, x));
      CHECK(ext.frobenius_q(ext.frobenius_q(x)) == x);  // involution
      CHECK(ext.frobenius_q(ext.mul(x, y)) ==
            ext.mul(ext.frobenius_q(x), ext.frobenius_q(y)));
      CHECK(ext.in_base(ext.norm_to_base(x) /* already a base code */));
      if (x != 0)
        CHECK(ext.mul(x, ext.inv(x)) == 1);
    }
    // Base-field codes embed as themselves and are Frobenius-fixed.
    for (Code a = 0; a < f.q(); ++a) {
      CHECK(ext.embed(a) == a);
      CHECK(ext.in_base(a));
      CHECK(ext.frobenius_q(a) == a);
    }
  }
}

TEST_CASE("unit circle has q+1 elements with u^q = 1/u") {
  for (auto [p, e] : kSmallFields) {
    const Field f = Field::make(p, e);
    if (f.q() > 32) continue;
    const ExtField ext(f);
    const auto& circle = ext.unit_circle();
    REQUIRE(circle.size() == f.q() + 1);
    CHECK(std::is_sorted(circle.begin(), circle.end()));
    for (Code u : circle) {
      CHECK(ext.pow(u, static_cast<long long>(f.q()) + 1) == 1);
      CHECK(ext.frobenius_q(u) == ext.inv(u));
      CHECK(ext.norm_to_base(u) == 1);
    }
    CHECK(std::binary_search(circle.begin(), circle.end(), Code{1}));
  }
}

TEST_CASE("extension modulus is deterministic") {
  const ExtField a(Field::make(3, 1));
  const ExtField b(Field::make(3, 1));
  CHECK(a.ext_modulus() == b.ext_modulus());
  // Over F_3 the smallest irreducible quadratic is X^2 + 1.
  CHECK(a.ext_modulus() == std::array<Code, 3>{1, 0, 1});
}
