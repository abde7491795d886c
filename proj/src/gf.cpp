#include "pgldes/gf.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <stdexcept>

namespace pgldes {

namespace {

constexpr std::uint64_t kMaxQ = 1ULL << 20;   // supported field size ceiling
constexpr std::uint64_t kLogTabQ = 1ULL << 16;  // log/antilog table cutoff
constexpr std::uint64_t kAddTabQ = 1ULL << 10;  // addition table cutoff

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// --- dense polynomial arithmetic over the prime field F_p ----------------
// Coefficient vectors are constant-term-first with no trailing-zero
// guarantees; degree is tracked implicitly.

using PPoly = std::vector<std::uint64_t>;

std::size_t pdeg(const PPoly& a) {
  std::size_t d = a.size();
  while (d > 0 && a[d - 1] == 0) --d;
  return d == 0 ? 0 : d - 1;  // the zero polynomial reports degree 0
}

bool pis_zero(const PPoly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

// a mod f, f monic of degree df.
void pmod_inplace(PPoly& a, const PPoly& f, std::size_t df, std::uint64_t p) {
  for (std::size_t i = a.size(); i-- > df;) {
    const std::uint64_t c = a[i];
    if (!c) continue;
    a[i] = 0;
    for (std::size_t j = 0; j < df; ++j) {
      // subtract c * f[j] * X^{i-df+j}
      const std::uint64_t t = (c * f[j]) % p;
      std::uint64_t& slot = a[i - df + j];
      slot = (slot + p - t) % p;
    }
  }
  a.resize(df);
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::size_t df,
              std::uint64_t p) {
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  pmod_inplace(r, f, df, p);
  return r;
}

PPoly ppowmod(PPoly base, std::uint64_t n, const PPoly& f, std::size_t df,
              std::uint64_t p) {
  PPoly r(df, 0);
  if (df == 0) throw std::logic_error("ppowmod: zero modulus degree");
  r[0] = 1 % p;
  pmod_inplace(base, f, df, p);
  while (n) {
    if (n & 1) r = pmulmod(r, base, f, df, p);
    n >>= 1;
    if (n) base = pmulmod(base, base, f, df, p);
  }
  return r;
}

PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  auto inv_mod_p = [p](std::uint64_t x) {
    // p is prime and small; Fermat
    std::uint64_t r = 1, e = p - 2, bx = x % p;
    while (e) {
      if (e & 1) r = r * bx % p;
      bx = bx * bx % p;
      e >>= 1;
    }
    return r;
  };
  while (!pis_zero(b)) {
    // a <- a mod b (b made monic on the fly)
    const std::size_t db = pdeg(b);
    const std::uint64_t lead = b[db];
    if (lead != 1) {
      const std::uint64_t s = inv_mod_p(lead);
      for (auto& c : b) c = c * s % p;
    }
    // long division remainder
    PPoly r = a;
    for (std::size_t i = pdeg(r) + 1; i-- > db;) {
      if (i >= r.size()) continue;
      const std::uint64_t c = r[i];
      if (!c) continue;
      r[i] = 0;
      for (std::size_t j = 0; j < db; ++j) {
        const std::uint64_t t = (c * b[j]) % p;
        std::uint64_t& slot = r[i - db + j];
        slot = (slot + p - t) % p;
      }
    }
    r.resize(db == 0 ? 1 : db);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Deterministic irreducibility test for a monic degree-e polynomial over
// F_p: X^{p^e} = X mod f, and gcd(X^{p^{e/r}} - X, f) = 1 for every prime
// r | e.
bool irreducible_over_prime(const PPoly& f, std::uint64_t p, std::uint64_t e) {
  if (e == 1) return true;
  const std::size_t df = e;
  PPoly x(df, 0);
  if (df >= 2)
    x[1] = 1;
  else
    return true;
  // t_i = X^{p^i} mod f, stepping t_{i+1} = t_i^p
  std::vector<PPoly> t(e + 1);
  t[0] = x;
  for (std::uint64_t i = 0; i < e; ++i)
    t[i + 1] = ppowmod(t[i], p, f, df, p);
  if (t[e] != x) return false;
  for (std::uint64_t r : prime_factors(e)) {
    PPoly d = t[e / r];
    // d - X
    d[1] = (d[1] + p - 1) % p;
    PPoly g = pgcd(f, d, p);
    if (pdeg(g) != 0 || pis_zero(g)) return false;
  }
  return true;
}

}  // namespace

// --------------------------------------------------------------------------

struct Field::Impl {
  std::uint64_t p = 0, e = 0, q = 0;
  std::vector<Code> modulus;  // constant-term first, monic, length e+1
  Code gen = 0;

  std::vector<Code> neg_tab;             // size q when built
  std::vector<Code> add_tab;             // size q*q when built
  std::vector<std::uint32_t> log_tab;    // size q, log_tab[0] unused
  std::vector<Code> exp_tab;             // size 2(q-1)

  // ---- slow structural arithmetic on digit vectors ----
  std::vector<std::uint64_t> digits_of(Code a) const {
    std::vector<std::uint64_t> d(e);
    for (std::uint64_t i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }
  Code code_of(const std::uint64_t* d, std::size_t n) const {
    Code c = 0;
    for (std::size_t i = n; i-- > 0;) c = c * p + d[i] % p;
    return c;
  }
  Code slow_add(Code a, Code b) const {
    Code r = 0, mult = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      r += ((a % p + b % p) % p) * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return r;
  }
  Code slow_neg(Code a) const {
    Code r = 0, mult = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      r += ((p - a % p) % p) * mult;
      a /= p;
      mult *= p;
    }
    return r;
  }
  Code slow_mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    std::vector<std::uint64_t> prod(2 * e - 1, 0);
    const auto da = digits_of(a), db = digits_of(b);
    for (std::uint64_t i = 0; i < e; ++i) {
      if (!da[i]) continue;
      for (std::uint64_t j = 0; j < e; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    // reduce by the monic modulus
    for (std::size_t i = prod.size(); i-- > e;) {
      const std::uint64_t c = prod[i];
      if (!c) continue;
      prod[i] = 0;
      for (std::uint64_t j = 0; j < e; ++j) {
        std::uint64_t& slot = prod[i - e + j];
        slot = (slot + (p - (c * (modulus[j] % p)) % p)) % p;
      }
    }
    return code_of(prod.data(), e);
  }
  Code slow_pow(Code a, std::uint64_t n) const {
    Code r = 1 % q, b = a;
    while (n) {
      if (n & 1) r = slow_mul(r, b);
      n >>= 1;
      if (n) b = slow_mul(b, b);
    }
    return r;
  }
};

namespace {

std::shared_ptr<const Field::Impl> build_field(std::uint64_t p, std::uint64_t e,
                                               std::vector<Code> modulus,
                                               bool search_modulus) {
  if (!is_prime_u64(p)) throw std::invalid_argument("field: p is not prime");
  if (e < 1) throw std::invalid_argument("field: e must be >= 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxQ) throw std::invalid_argument("field: q exceeds 2^20");
  }

  auto impl = std::make_shared<Field::Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = q;

  if (search_modulus) {
    // Enumerate coefficient tuples (c0,...,c_{e-1}) in lexicographic order,
    // constant term most significant, and keep the first irreducible hit.
    PPoly f(e + 1, 0);
    f[e] = 1;
    bool found = false;
    std::uint64_t n = 0;
    const std::uint64_t total = q;  // p^e candidate tuples
    for (; n < total; ++n) {
      // The constant term c0 is the most significant digit of n, so walking
      // n upward walks the tuples (c0,...,c_{e-1}) in lexicographic order.
      std::uint64_t m = n;
      for (std::uint64_t i = e; i-- > 0;) {
        f[i] = m % p;
        m /= p;
      }
      if (irreducible_over_prime(f, p, e)) {
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("field: no irreducible polynomial found");
    impl->modulus.assign(f.begin(), f.end());
  } else {
    if (modulus.size() != e + 1)
      throw std::invalid_argument("field: modulus must have length e+1");
    for (Code c : modulus)
      if (c >= p)
        throw std::invalid_argument("field: modulus coefficient out of range");
    if (modulus[e] != 1)
      throw std::invalid_argument("field: modulus must be monic");
    PPoly f(modulus.begin(), modulus.end());
    if (!irreducible_over_prime(f, p, e))
      throw std::invalid_argument("field: modulus is reducible");
    impl->modulus = std::move(modulus);
  }

  // Tables.  All built from the structural digit arithmetic, so table and
  // non-table fields behave identically.
  if (q <= kLogTabQ) {
    impl->neg_tab.resize(q);
    for (Code a = 0; a < q; ++a) impl->neg_tab[a] = impl->slow_neg(a);
  }
  if (q <= kAddTabQ) {
    impl->add_tab.resize(q * q);
    for (Code a = 0; a < q; ++a)
      for (Code b = 0; b < q; ++b)
        impl->add_tab[a * q + b] = impl->slow_add(a, b);
  }

  // Smallest multiplicative generator.
  {
    const auto fs = prime_factors(q - 1);
    Code g = 0;
    for (Code cand = 1; cand < q; ++cand) {
      bool ok = true;
      for (auto r : fs)
        if (impl->slow_pow(cand, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    if (g == 0 && q > 2) throw std::logic_error("field: no generator found");
    impl->gen = (q == 2) ? 1 : g;
  }

  if (q <= kLogTabQ) {
    impl->exp_tab.resize(2 * (q - 1));
    impl->log_tab.assign(q, 0);
    Code x = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      impl->exp_tab[i] = x;
      impl->exp_tab[i + (q - 1)] = x;
      if (impl->log_tab[x] != 0 && x != 1)
        throw std::logic_error("field: generator order defect");
      impl->log_tab[x] = static_cast<std::uint32_t>(i);
      x = impl->slow_mul(x, impl->gen);
    }
    if (x != 1) throw std::logic_error("field: generator order defect");
  }

  // Cheap sanity spot-check of the multiplicative group order.
  if (impl->slow_pow(impl->gen, q - 1) != 1)
    throw std::logic_error("field: x^(q-1) != 1 for generator");

  return impl;
}

}  // namespace

Field Field::make(std::uint64_t p, std::uint64_t e) {
  Field f;
  f.impl_ = build_field(p, e, {}, true);
  return f;
}

Field Field::make(std::uint64_t p, std::uint64_t e,
                  const std::vector<Code>& modulus) {
  Field f;
  f.impl_ = build_field(p, e, modulus, false);
  return f;
}

Field Field::parse(std::string_view spec) {
  auto parse_u64 = [](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("field spec: bad integer '" +
                                  std::string(s) + "'");
    return v;
  };
  const auto colon = spec.find(':');
  std::string_view head = spec.substr(0, colon);
  const auto caret = head.find('^');
  if (caret == std::string_view::npos)
    throw std::invalid_argument("field spec: expected p^e");
  const std::uint64_t p = parse_u64(head.substr(0, caret));
  const std::uint64_t e = parse_u64(head.substr(caret + 1));
  if (colon == std::string_view::npos) return make(p, e);
  std::vector<Code> mod;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    mod.push_back(parse_u64(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return make(p, e, mod);
}

#define IMPL_ (*impl_)

std::uint64_t Field::p() const { return IMPL_.p; }
std::uint64_t Field::e() const { return IMPL_.e; }
std::uint64_t Field::q() const { return IMPL_.q; }
const std::vector<Code>& Field::modulus() const { return IMPL_.modulus; }

std::string Field::spec_string() const {
  std::string s = std::to_string(p()) + "^" + std::to_string(e());
  if (e() > 1) {
    s += ":";
    for (std::size_t i = 0; i < IMPL_.modulus.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(IMPL_.modulus[i]);
    }
  }
  return s;
}

Code Field::add(Code a, Code b) const {
  const auto& im = IMPL_;
  if (!im.add_tab.empty()) return im.add_tab[a * im.q + b];
  return im.slow_add(a, b);
}

Code Field::sub(Code a, Code b) const { return add(a, neg(b)); }

Code Field::neg(Code a) const {
  const auto& im = IMPL_;
  if (!im.neg_tab.empty()) return im.neg_tab[a];
  return im.slow_neg(a);
}

Code Field::mul(Code a, Code b) const {
  const auto& im = IMPL_;
  if (a == 0 || b == 0) return 0;
  if (!im.exp_tab.empty())
    return im.exp_tab[im.log_tab[a] + im.log_tab[b]];
  return im.slow_mul(a, b);
}

Code Field::inv(Code a) const {
  if (a == 0) throw std::invalid_argument("field: inverse of zero");
  const auto& im = IMPL_;
  if (!im.exp_tab.empty())
    return im.exp_tab[(im.q - 1) - im.log_tab[a]];
  return im.slow_pow(a, im.q - 2);
}

Code Field::div(Code a, Code b) const {
  if (b == 0) throw std::invalid_argument("field: division by zero");
  return mul(a, inv(b));
}

Code Field::pow(Code a, long long n) const {
  if (n < 0) {
    a = inv(a);  // throws on zero base, as it should
    n = -n;
  }
  std::uint64_t m = static_cast<std::uint64_t>(n);
  if (a == 0) return m == 0 ? 1 : 0;
  const auto& im = IMPL_;
  if (!im.exp_tab.empty()) {
    const std::uint64_t l = (static_cast<std::uint64_t>(im.log_tab[a]) *
                             (m % (im.q - 1))) % (im.q - 1);
    return im.exp_tab[l];
  }
  return im.slow_pow(a, m % (im.q - 1));
}

Code Field::frobenius(Code a, std::uint64_t j) const {
  j %= e();
  Code r = a;
  for (std::uint64_t i = 0; i < j; ++i)
    r = pow(r, static_cast<long long>(p()));
  return r;
}

std::vector<std::uint64_t> Field::digits(Code a) const {
  return IMPL_.digits_of(a);
}

Code Field::from_digits(const std::vector<std::uint64_t>& d) const {
  if (d.size() != e()) throw std::invalid_argument("field: bad digit count");
  return IMPL_.code_of(d.data(), d.size());
}

Code Field::generator() const { return IMPL_.gen; }

bool Field::is_square(Code a) const {
  if (a == 0) return true;
  if (p() == 2) return true;  // squaring is bijective in characteristic 2
  return pow(a, static_cast<long long>((q() - 1) / 2)) == 1;
}

std::vector<Code> Field::mult_subgroup(std::uint64_t d) const {
  if (d == 0 || (q() - 1) % d != 0)
    throw std::invalid_argument("mult_subgroup: d does not divide q-1");
  std::vector<Code> out;
  out.reserve(d);
  for (Code x = 1; x < q(); ++x)
    if (pow(x, static_cast<long long>(d)) == 1) out.push_back(x);
  if (out.size() != d)
    throw std::logic_error("mult_subgroup: wrong subgroup size");
  return out;
}

std::vector<Code> Field::subfield(std::uint64_t m) const {
  if (m == 0 || e() % m != 0)
    throw std::invalid_argument("subfield: m does not divide e");
  std::vector<Code> out;
  for (Code x = 0; x < q(); ++x)
    if (frobenius(x, m) == x) out.push_back(x);
  std::uint64_t want = 1;
  for (std::uint64_t i = 0; i < m; ++i) want *= p();
  if (out.size() != want) throw std::logic_error("subfield: wrong size");
  return out;
}

bool Field::operator==(const Field& o) const {
  if (impl_ == o.impl_) return true;
  if (!impl_ || !o.impl_) return false;
  return p() == o.p() && e() == o.e() && modulus() == o.modulus();
}

// --------------------------------------------------------------------------

struct ExtField::Impl {
  Field base;
  std::uint64_t q = 0, q2 = 0;
  std::array<Code, 3> emod{};  // c0, c1, 1
  mutable std::once_flag circle_once;
  mutable std::vector<Code> circle;
};

ExtField::ExtField(const Field& base) {
  if (!base.valid()) throw std::invalid_argument("ext: invalid base field");
  auto impl = std::make_shared<Impl>();
  impl->base = base;
  impl->q = base.q();
  impl->q2 = impl->q * impl->q;

  // Lexicographically smallest monic irreducible X^2 + c1 X + c0.  Closed
  // root criteria keep each candidate O(1): odd characteristic needs a
  // non-square discriminant c1^2 - 4 c0; characteristic 2 needs c1 != 0 and
  // Tr(c0 / c1^2) = 1.
  const std::uint64_t q = impl->q;
  auto trace_to_f2 = [&](Code z) {
    Code t = z;
    Code acc = z;
    for (std::uint64_t i = 1; i < base.e(); ++i) {
      t = base.mul(t, t);
      acc = base.add(acc, t);
    }
    return acc;  // 0 or 1
  };
  bool found = false;
  for (Code c0 = 0; c0 < q && !found; ++c0) {
    for (Code c1 = 0; c1 < q && !found; ++c1) {
      bool irred;
      if (base.p() == 2) {
        irred = (c1 != 0) &&
                trace_to_f2(base.div(c0, base.mul(c1, c1))) == 1;
      } else {
        const Code four = base.from_int(4);
        const Code disc =
            base.sub(base.mul(c1, c1), base.mul(four, c0));
        irred = !base.is_square(disc);
      }
      if (irred) {
        impl->emod = {c0, c1, 1};
        found = true;
      }
    }
  }
  if (!found) throw std::logic_error("ext: no irreducible quadratic found");
  impl_ = std::move(impl);
}

const Field& ExtField::base() const { return impl_->base; }
std::uint64_t ExtField::size() const { return impl_->q2; }
const std::array<Code, 3>& ExtField::ext_modulus() const {
  return impl_->emod;
}

std::pair<Code, Code> ExtField::parts(Code z) const {
  return {z % impl_->q, z / impl_->q};
}

Code ExtField::from_parts(Code a, Code b) const {
  return a + b * impl_->q;
}

bool ExtField::in_base(Code z) const { return z < impl_->q; }

Code ExtField::add(Code x, Code y) const {
  const auto& f = impl_->base;
  const std::uint64_t q = impl_->q;
  return f.add(x % q, y % q) + f.add(x / q, y / q) * q;
}

Code ExtField::sub(Code x, Code y) const { return add(x, neg(y)); }

Code ExtField::neg(Code x) const {
  const auto& f = impl_->base;
  const std::uint64_t q = impl_->q;
  return f.neg(x % q) + f.neg(x / q) * q;
}

Code ExtField::mul(Code x, Code y) const {
  const auto& f = impl_->base;
  const std::uint64_t q = impl_->q;
  const Code a = x % q, b = x / q, c = y % q, d = y / q;
  const Code ac = f.mul(a, c), bd = f.mul(b, d);
  const Code ad_bc = f.add(f.mul(a, d), f.mul(b, c));
  // beta^2 = -c1*beta - c0
  const Code re = f.sub(ac, f.mul(bd, impl_->emod[0]));
  const Code im = f.sub(ad_bc, f.mul(bd, impl_->emod[1]));
  return re + im * q;
}

Code ExtField::frobenius_q(Code z) const {
  const auto& f = impl_->base;
  const std::uint64_t q = impl_->q;
  const Code a = z % q, b = z / q;
  // beta^q is the other root of the quadratic: -c1 - beta
  return f.sub(a, f.mul(b, impl_->emod[1])) + f.neg(b) * q;
}

Code ExtField::norm_to_base(Code z) const {
  const Code w = mul(z, frobenius_q(z));
  if (!in_base(w)) throw std::logic_error("ext: norm left the base field");
  return w;
}

Code ExtField::inv(Code x) const {
  if (x == 0) throw std::invalid_argument("ext: inverse of zero");
  const Code n = norm_to_base(x);
  const Code ninv = impl_->base.inv(n);
  return mul(frobenius_q(x), from_parts(ninv, 0));
}

Code ExtField::div(Code x, Code y) const {
  if (y == 0) throw std::invalid_argument("ext: division by zero");
  return mul(x, inv(y));
}

Code ExtField::pow(Code x, long long n) const {
  if (n < 0) {
    x = inv(x);
    n = -n;
  }
  std::uint64_t m = static_cast<std::uint64_t>(n);
  Code r = 1, b = x;
  while (m) {
    if (m & 1) r = mul(r, b);
    m >>= 1;
    if (m) b = mul(b, b);
  }
  return r;
}

const std::vector<Code>& ExtField::unit_circle() const {
  const Impl& im = *impl_;
  std::call_once(im.circle_once, [&im, this] {
    std::vector<Code> c;
    c.reserve(im.q + 1);
    for (Code z = 1; z < im.q2; ++z)
      if (norm_to_base(z) == 1) c.push_back(z);  // z^{q+1} = Norm(z)
    if (c.size() != im.q + 1)
      throw std::logic_error("ext: unit circle has wrong size");
    im.circle = std::move(c);
  });
  return im.circle;
}

}  // namespace pgldes
