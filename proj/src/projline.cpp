#include "pgldes/projline.hpp"

#include <stdexcept>

namespace pgldes {

std::string to_string(const ProjPoint& pt) {
  return pt.is_infinity() ? "inf" : std::to_string(pt.v);
}

Pgl2 pgl2_make(const Field& f, Code a, Code b, Code c, Code d) {
  const Code det = f.sub(f.mul(a, d), f.mul(b, c));
  if (det == 0) throw std::invalid_argument("pgl2: singular matrix");
  Code lead = a ? a : b ? b : c ? c : d;
  if (lead != 1) {
    const Code s = f.inv(lead);
    a = f.mul(a, s);
    b = f.mul(b, s);
    c = f.mul(c, s);
    d = f.mul(d, s);
  }
  return Pgl2{a, b, c, d};
}

Pgl2 pgl2_mul(const Field& f, const Pgl2& g, const Pgl2& h) {
  return pgl2_make(f, f.add(f.mul(g.a, h.a), f.mul(g.b, h.c)),
                   f.add(f.mul(g.a, h.b), f.mul(g.b, h.d)),
                   f.add(f.mul(g.c, h.a), f.mul(g.d, h.c)),
                   f.add(f.mul(g.c, h.b), f.mul(g.d, h.d)));
}

Pgl2 pgl2_inv(const Field& f, const Pgl2& g) {
  // adjugate; the determinant scale is absorbed by canonicalization
  return pgl2_make(f, g.d, f.neg(g.b), f.neg(g.c), g.a);
}

ProjPoint pgl2_act(const Field& f, const Pgl2& g, const ProjPoint& x) {
  if (x.is_infinity())
    return g.c == 0 ? ProjPoint::infinity()
                    : ProjPoint::finite(f.div(g.a, g.c));
  const Code den = f.add(f.mul(g.c, x.v), g.d);
  const Code num = f.add(f.mul(g.a, x.v), g.b);
  if (den == 0) return ProjPoint::infinity();
  return ProjPoint::finite(f.div(num, den));
}

Pgl2 map_triple_to_canonical(const Field& f, const ProjPoint& p1,
                             const ProjPoint& p2, const ProjPoint& p3) {
  if (p1 == p2 || p1 == p3 || p2 == p3)
    throw std::invalid_argument("map_triple: points must be distinct");
  Pgl2 g;
  if (p1.is_infinity()) {
    // x -> (x - p2) / (p3 - p2)
    g = pgl2_make(f, 1, f.neg(p2.v), 0, f.sub(p3.v, p2.v));
  } else if (p2.is_infinity()) {
    // x -> (p3 - p1) / (x - p1)
    g = pgl2_make(f, 0, f.sub(p3.v, p1.v), 1, f.neg(p1.v));
  } else if (p3.is_infinity()) {
    // x -> (x - p2) / (x - p1)
    g = pgl2_make(f, 1, f.neg(p2.v), 1, f.neg(p1.v));
  } else {
    // x -> ((x - p2)(p3 - p1)) / ((x - p1)(p3 - p2))
    const Code u = f.sub(p3.v, p1.v);
    const Code w = f.sub(p3.v, p2.v);
    g = pgl2_make(f, u, f.neg(f.mul(p2.v, u)), w, f.neg(f.mul(p1.v, w)));
  }
  if (pgl2_act(f, g, p1) != ProjPoint::infinity() ||
      pgl2_act(f, g, p2) != ProjPoint::finite(0) ||
      pgl2_act(f, g, p3) != ProjPoint::finite(1))
    throw std::logic_error("map_triple: construction check failed");
  return g;
}

std::vector<Pgl2> pgl2_all(const Field& f) {
  const std::uint64_t q = f.q();
  std::vector<Pgl2> out;
  out.reserve(pgl2_order(q));
  // a = 1: need d != bc.
  for (Code b = 0; b < q; ++b)
    for (Code c = 0; c < q; ++c) {
      const Code bc = f.mul(b, c);
      for (Code d = 0; d < q; ++d)
        if (d != bc) out.push_back(Pgl2{1, b, c, d});
    }
  // a = 0, b = 1: need c != 0.
  for (Code c = 1; c < q; ++c)
    for (Code d = 0; d < q; ++d) out.push_back(Pgl2{0, 1, c, d});
  if (out.size() != pgl2_order(q))
    throw std::logic_error("pgl2_all: wrong element count");
  return out;
}

std::vector<ProjPoint> all_points(const Field& f) {
  std::vector<ProjPoint> pts;
  pts.reserve(f.q() + 1);
  for (Code x = 0; x < f.q(); ++x) pts.push_back(ProjPoint::finite(x));
  pts.push_back(ProjPoint::infinity());
  return pts;
}

}  // namespace pgldes
