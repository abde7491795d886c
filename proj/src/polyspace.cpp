#include "pgldes/polyspace.hpp"

#include <random>
#include <stdexcept>

#include "pgldes/projline.hpp"

namespace pgldes {

Code evaluate(const Field& f, const HomPoly& poly, Code x) {
  // Horner in x on f(x, 1) = sum coef[i] x^{k-i}
  Code acc = 0;
  for (Code c : poly.coef) acc = f.add(f.mul(acc, x), c);
  return acc;
}

Code evaluate_at_infinity(const HomPoly& poly) { return poly.coef[0]; }

std::vector<Code> ev_vector(const Field& f, const HomPoly& poly) {
  std::vector<Code> v;
  v.reserve(f.q() + 1);
  for (Code x = 0; x < f.q(); ++x) v.push_back(evaluate(f, poly, x));
  v.push_back(evaluate_at_infinity(poly));
  return v;
}

std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  auto powmod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::uint64_t r = 1 % p;
  while (m || n) {
    const std::uint64_t nd = n % p;
    std::uint64_t md = m % p;
    if (md > nd) return 0;
    if (md > nd - md) md = nd - md;
    // C(nd, md) mod p via the multiplicative formula and Fermat inverses
    for (std::uint64_t i = 1; i <= md; ++i)
      r = r * ((nd - md + i) % p) % p * powmod(i, p - 2) % p;
    n /= p;
    m /= p;
  }
  return r;
}

bool leq_p(std::uint64_t i, std::uint64_t k, std::uint64_t p) {
  while (i || k) {
    if (i % p > k % p) return false;
    i /= p;
    k /= p;
  }
  return true;
}

std::vector<std::uint64_t> forbidden_set(std::uint64_t k, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a <= k; ++a)
    if (!leq_p(a, k, p)) out.push_back(a);
  return out;
}

bool carry_free(const std::vector<std::uint64_t>& summands, std::uint64_t p) {
  std::vector<std::uint64_t> digits;
  for (std::uint64_t s : summands) {
    std::size_t i = 0;
    while (s) {
      if (i == digits.size()) digits.push_back(0);
      digits[i] += s % p;
      if (digits[i] >= p) return false;
      s /= p;
      ++i;
    }
  }
  return true;
}

HomPoly poly_mul(const Field& f, const HomPoly& u, const HomPoly& v) {
  HomPoly r;
  r.coef.assign(u.coef.size() + v.coef.size() - 1, 0);
  for (std::size_t i = 0; i < u.coef.size(); ++i) {
    if (!u.coef[i]) continue;
    for (std::size_t j = 0; j < v.coef.size(); ++j)
      r.coef[i + j] = f.add(r.coef[i + j], f.mul(u.coef[i], v.coef[j]));
  }
  return r;
}

HomPoly linear_power(const Field& f, Code s, Code t, std::uint64_t n) {
  HomPoly r;
  r.coef.resize(n + 1);
  // (sX + tY)^n: coefficient of X^{n-j} Y^j is C(n,j) s^{n-j} t^j
  for (std::uint64_t j = 0; j <= n; ++j) {
    const Code bin = f.from_int(binom_mod_p(n, j, f.p()));
    r.coef[j] = f.mul(bin, f.mul(f.pow(s, static_cast<long long>(n - j)),
                                 f.pow(t, static_cast<long long>(j))));
  }
  return r;
}

HomPoly gl2_act_poly(const Field& f, const Mat2& g, const HomPoly& poly) {
  if (f.sub(f.mul(g.a, g.d), f.mul(g.b, g.c)) == 0)
    throw std::invalid_argument("gl2_act_poly: singular matrix");
  const std::uint64_t k = poly.degree();
  HomPoly out;
  out.coef.assign(k + 1, 0);
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (!poly.coef[i]) continue;
    const HomPoly left = linear_power(f, g.d, f.neg(g.b), k - i);
    const HomPoly right = linear_power(f, f.neg(g.c), g.a, i);
    const HomPoly term = poly_mul(f, left, right);
    for (std::uint64_t j = 0; j <= k; ++j)
      out.coef[j] = f.add(out.coef[j], f.mul(poly.coef[i], term.coef[j]));
  }
  return out;
}

Subspace Subspace::from_rows(const Field& f, std::uint64_t k, Matrix rows) {
  for (const auto& r : rows)
    if (r.size() != k + 1)
      throw std::invalid_argument("subspace: row length must be k+1");
  rref_in_place(f, rows);
  Subspace w;
  w.k_ = k;
  w.rows_ = std::move(rows);
  return w;
}

Subspace Subspace::lucas(const Field& f, std::uint64_t k) {
  Matrix rows;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (!leq_p(i, k, f.p())) continue;
    Row r(k + 1, 0);
    r[i] = 1;
    rows.push_back(std::move(r));
  }
  return from_rows(f, k, std::move(rows));
}

Subspace Subspace::full(const Field& f, std::uint64_t k) {
  Matrix rows(k + 1, Row(k + 1, 0));
  for (std::uint64_t i = 0; i <= k; ++i) rows[i][i] = 1;
  return from_rows(f, k, std::move(rows));
}

bool Subspace::contains(const Field& f, const HomPoly& poly) const {
  if (poly.degree() != k_)
    throw std::invalid_argument("subspace: degree mismatch");
  return reduces_to_zero(f, rows_, poly.coef);
}

Matrix Subspace::annihilator(const Field& f) const {
  return kernel_basis(f, rows_, k_ + 1);
}

namespace {

Mat2 random_invertible(const Field& f, std::mt19937_64& rng) {
  const std::uint64_t q = f.q();
  for (;;) {
    const Code a = rng() % q, b = rng() % q, c = rng() % q, d = rng() % q;
    if (f.sub(f.mul(a, d), f.mul(b, c)) != 0) return Mat2{a, b, c, d};
  }
}

}  // namespace

InvarianceResult check_gl2_invariance(const Field& f, const Subspace& w,
                                      std::uint64_t trials,
                                      std::uint64_t seed, bool exhaustive) {
  InvarianceResult res;
  res.seed = seed;
  const Matrix ann = w.annihilator(f);
  auto row_stays = [&](const Mat2& g) -> bool {
    for (const auto& basis_row : w.rows()) {
      HomPoly moved = gl2_act_poly(f, g, HomPoly{basis_row});
      for (const auto& a : ann) {
        if (dot(f, a, moved.coef) != 0) {
          res.invariant = false;
          res.witness_g = g;
          res.witness_row = HomPoly{basis_row};
          return false;
        }
      }
    }
    return true;
  };
  if (exhaustive) {
    // Scalar matrices act by a nonzero scalar on every form, so checking
    // the canonical representatives covers all of GL2.
    for (const Pgl2& g : pgl2_all(f))
      if (!row_stays(Mat2{g.a, g.b, g.c, g.d})) return res;
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t)
    if (!row_stays(random_invertible(f, rng))) return res;
  return res;
}

std::uint64_t kernel_dimension(const Field& f, std::uint64_t k) {
  Matrix rows;
  for (std::uint64_t i = 0; i <= k; ++i) {
    Row mono(k + 1, 0);
    mono[i] = 1;
    rows.push_back(ev_vector(f, HomPoly{std::move(mono)}));
  }
  return (k + 1) - matrix_rank(f, std::move(rows));
}

}  // namespace pgldes
