#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pgldes/gf.hpp"

namespace pgldes {

/// A point of the projective line P^1(F_q): either a finite field element
/// (its canonical code) or the point at infinity.  The total order is
/// "finite by code, infinity last", which is also the coordinate order used
/// by evaluation vectors and codes.
struct ProjPoint {
  static constexpr Code kInf = std::numeric_limits<Code>::max();
  Code v = 0;

  static ProjPoint finite(Code x) { return ProjPoint{x}; }
  static ProjPoint infinity() { return ProjPoint{kInf}; }

  bool is_infinity() const { return v == kInf; }
  Code code() const { return v; }

  // Coordinate index in a field of size q: finite codes first, then q.
  std::uint64_t index(std::uint64_t q) const { return is_infinity() ? q : v; }
  static ProjPoint from_index(std::uint64_t i, std::uint64_t q) {
    return i == q ? infinity() : finite(i);
  }

  auto operator<=>(const ProjPoint&) const = default;
};

std::string to_string(const ProjPoint& pt);

/// An element of PGL_2(F_q) in canonical form: the matrix (a b; c d) scaled
/// so that its first nonzero entry (in a, b, c, d order) equals 1.  Two
/// matrices represent the same fractional-linear map iff their canonical
/// forms are equal.
struct Pgl2 {
  Code a = 1, b = 0, c = 0, d = 1;
  auto operator<=>(const Pgl2&) const = default;
};

// Canonicalize an invertible matrix; throws when ad - bc = 0.
Pgl2 pgl2_make(const Field& f, Code a, Code b, Code c, Code d);

Pgl2 pgl2_mul(const Field& f, const Pgl2& g, const Pgl2& h);
Pgl2 pgl2_inv(const Field& f, const Pgl2& g);

// The fractional-linear action x -> (ax+b)/(cx+d) with the usual four-way
// convention at poles and infinity.
ProjPoint pgl2_act(const Field& f, const Pgl2& g, const ProjPoint& x);

// The unique group element sending (p1, p2, p3) to (inf, 0, 1).  The three
// inputs must be pairwise distinct.
Pgl2 map_triple_to_canonical(const Field& f, const ProjPoint& p1,
                             const ProjPoint& p2, const ProjPoint& p3);

// All q^3 - q canonical representatives, in a fixed deterministic order.
std::vector<Pgl2> pgl2_all(const Field& f);

inline std::uint64_t pgl2_order(std::uint64_t q) { return q * q * q - q; }

// All q+1 points of the projective line, in coordinate order.
std::vector<ProjPoint> all_points(const Field& f);

}  // namespace pgldes
