#include "pgldes/codes.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "pgldes/cayley.hpp"

namespace pgldes {

LinearCode make_code(const Field& f, std::uint64_t n, Matrix rows) {
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("make_code: ragged rows");
    for (Code c : r)
      if (c >= f.q()) throw std::invalid_argument("make_code: bad entry");
  }
  rref_in_place(f, rows);
  return LinearCode{f, n, std::move(rows)};
}

LinearCode code_from_subspace(const Field& f, const Subspace& w) {
  if (w.degree() > f.q())
    throw std::invalid_argument("code_from_subspace: degree must be <= q");
  if (w.dim() == 0)
    throw std::invalid_argument("code_from_subspace: zero subspace");
  Matrix rows;
  for (const auto& r : w.rows()) rows.push_back(ev_vector(f, HomPoly{r}));
  const std::size_t expect = rows.size();
  rref_in_place(f, rows);
  if (rows.size() != expect)
    throw std::logic_error("code_from_subspace: evaluation lost rank");
  return LinearCode{f, f.q() + 1, std::move(rows)};
}

// ---------------------------------------------------------------------------
// Projective codeword scan: one representative per scalar class, generated
// as messages whose first nonzero digit is 1.  The partial word after each
// fixed digit sits on a per-depth stack, so stepping costs one table add
// per coordinate.

namespace {

std::uint64_t projective_class_count(std::uint64_t q, std::uint64_t dim) {
  std::uint64_t acc = 0;  // 1 + q + ... + q^{dim-1}, saturating
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (acc > (UINT64_MAX - 1) / q) return UINT64_MAX;
    acc = acc * q + 1;
  }
  return acc;
}

std::uint64_t hamming_weight(const Row& r) {
  std::uint64_t w = 0;
  for (Code c : r)
    if (c) ++w;
  return w;
}

class WordScan {
 public:
  WordScan(const Field& f, const Matrix& gen, std::uint64_t n)
      : f_(f), gen_(gen), n_(n), dim_(gen.size()) {
    scaled_.resize(dim_);
    for (std::uint64_t r = 0; r < dim_; ++r) {
      scaled_[r].resize(f.q() - 1, Row(n));
      for (Code c = 1; c < f.q(); ++c)
        for (std::uint64_t j = 0; j < n; ++j)
          scaled_[r][c - 1][j] = f.mul(c, gen[r][j]);
    }
    stack_.assign(dim_ + 1, Row(n, 0));
  }

  // All classes whose first nonzero message digit sits at `lead`.
  template <class Leaf>
  void run_lead(std::uint64_t lead, Leaf&& leaf) {
    stack_[lead] = gen_[lead];
    rec(lead + 1, lead, leaf);
  }

 private:
  template <class Leaf>
  void rec(std::uint64_t row, std::uint64_t slot, Leaf& leaf) {
    if (row == dim_) {
      leaf(stack_[slot]);
      return;
    }
    rec(row + 1, slot, leaf);  // digit 0 keeps the word as is
    const Row& src = stack_[slot];
    Row& dst = stack_[row + 1];
    for (Code c = 1; c < f_.q(); ++c) {
      const Row& sr = scaled_[row][c - 1];
      for (std::uint64_t j = 0; j < n_; ++j) dst[j] = f_.add(src[j], sr[j]);
      rec(row + 1, row + 1, leaf);
    }
  }

  const Field& f_;
  const Matrix& gen_;
  std::uint64_t n_, dim_;
  std::vector<std::vector<Row>> scaled_;
  std::vector<Row> stack_;
};

std::vector<std::uint64_t> projective_weight_tally(const Field& f,
                                                   const Matrix& gen,
                                                   std::uint64_t n,
                                                   const CodeCaps& caps) {
  if (projective_class_count(f.q(), gen.size()) > caps.word_cap)
    throw std::runtime_error("codeword scan exceeds the word cap");
  std::vector<std::uint64_t> tally(n + 1, 0);
  if (gen.empty()) return tally;

  if (caps.workers <= 1) {
    WordScan scan(f, gen, n);
    for (std::uint64_t lead = 0; lead < gen.size(); ++lead)
      scan.run_lead(lead, [&](const Row& w) { ++tally[hamming_weight(w)]; });
  } else {
    std::vector<std::vector<std::uint64_t>> parts(
        gen.size(), std::vector<std::uint64_t>(n + 1, 0));
    parallel_indices(gen.size(), caps.workers, [&](std::size_t lead) {
      WordScan scan(f, gen, n);
      scan.run_lead(lead,
                    [&](const Row& w) { ++parts[lead][hamming_weight(w)]; });
    });
    for (const auto& part : parts)
      for (std::uint64_t w = 0; w <= n; ++w) tally[w] += part[w];
  }
  if (tally[0] != 0)
    throw std::logic_error("projective scan produced the zero word");
  return tally;
}

}  // namespace

std::uint64_t min_distance(const LinearCode& c, const CodeCaps& caps) {
  if (c.dim() == 0)
    throw std::invalid_argument("min_distance: zero code has no distance");
  const auto tally = projective_weight_tally(c.field, c.gen, c.n, caps);
  for (std::uint64_t w = 1; w <= c.n; ++w)
    if (tally[w]) return w;
  throw std::logic_error("min_distance: no nonzero codeword found");
}

LinearCode dual(const LinearCode& c) {
  Matrix k = kernel_basis(c.field, c.gen, c.n);
  rref_in_place(c.field, k);
  if (k.size() != c.n - c.dim())
    throw std::logic_error("dual: dimension mismatch");
  return LinearCode{c.field, c.n, std::move(k)};
}

WeightDist weight_distribution(const LinearCode& c, WeightStrategy strategy,
                               const CodeCaps& caps) {
  WeightDist out;
  out.n = c.n;
  out.dim = c.dim();
  if (strategy == WeightStrategy::direct) {
    const auto tally = projective_weight_tally(c.field, c.gen, c.n, caps);
    out.counts.assign(c.n + 1, 0);
    out.counts[0] = 1;
    for (std::uint64_t w = 1; w <= c.n; ++w)
      out.counts[w] = BigInt(tally[w]) * (c.field.q() - 1);
  } else {
    out = macwilliams_dual_distribution(
        c.field, weight_distribution(dual(c), WeightStrategy::direct, caps));
  }
  BigInt total = 0;
  for (const BigInt& a : out.counts) total += a;
  if (out.counts[0] != 1 ||
      total != boost::multiprecision::pow(BigInt(c.field.q()),
                                          static_cast<unsigned>(out.dim)))
    throw std::logic_error("weight_distribution: counts fail the size check");
  return out;
}

WeightDist macwilliams_dual_distribution(const Field& f,
                                         const WeightDist& w) {
  const std::uint64_t n = w.n;
  if (w.counts.size() != n + 1)
    throw std::invalid_argument("macwilliams: counts must have length n+1");
  std::vector<std::vector<BigInt>> binq(n + 1,
                                        std::vector<BigInt>(n + 1, 0));
  for (std::uint64_t i = 0; i <= n; ++i) {
    binq[i][0] = 1;
    for (std::uint64_t j = 1; j <= i; ++j)
      binq[i][j] = binq[i - 1][j - 1] + binq[i - 1][j];
  }
  std::vector<BigInt> qm1pow(n + 1);
  qm1pow[0] = 1;
  for (std::uint64_t t = 1; t <= n; ++t)
    qm1pow[t] = qm1pow[t - 1] * (f.q() - 1);

  WeightDist out;
  out.n = n;
  out.dim = n - w.dim;
  out.counts.assign(n + 1, 0);
  const BigInt denom =
      boost::multiprecision::pow(BigInt(f.q()), static_cast<unsigned>(w.dim));
  for (std::uint64_t j = 0; j <= n; ++j) {
    BigInt acc = 0;
    for (std::uint64_t i = 0; i <= n; ++i) {
      if (w.counts[i] == 0) continue;
      BigInt kraw = 0;  // K_j(i) = sum_h (-1)^h C(i,h) C(n-i,j-h) (q-1)^{j-h}
      for (std::uint64_t h = 0; h <= std::min(i, j); ++h) {
        if (j - h > n - i) continue;
        const BigInt term = binq[i][h] * binq[n - i][j - h] * qm1pow[j - h];
        if (h % 2)
          kraw -= term;
        else
          kraw += term;
      }
      acc += w.counts[i] * kraw;
    }
    if (acc < 0 || acc % denom != 0)
      throw std::logic_error("macwilliams: transform gave a bad count");
    out.counts[j] = acc / denom;
  }
  return out;
}

SupportDesignReport support_design(const LinearCode& c, std::uint64_t w,
                                   std::uint64_t t, const CodeCaps& caps) {
  if (c.n != c.field.q() + 1)
    throw std::invalid_argument(
        "support_design: coordinates must be the projective line");
  if (w < 3 || w > c.n)
    throw std::invalid_argument("support_design: need 3 <= w <= n");
  if (c.dim() == 0)
    throw std::invalid_argument("support_design: zero code");
  if (projective_class_count(c.field.q(), c.dim()) > caps.word_cap)
    throw std::runtime_error("support_design: codeword scan exceeds the cap");

  std::set<std::vector<std::uint64_t>> supports;
  WordScan scan(c.field, c.gen, c.n);
  for (std::uint64_t lead = 0; lead < c.dim(); ++lead)
    scan.run_lead(lead, [&](const Row& word) {
      if (hamming_weight(word) != w) return;
      std::vector<std::uint64_t> sup;
      sup.reserve(w);
      for (std::uint64_t j = 0; j < c.n; ++j)
        if (word[j]) sup.push_back(j);
      supports.insert(std::move(sup));
    });

  SupportDesignReport rep;
  rep.w = w;
  rep.family.v = c.n;
  rep.family.k = w;
  rep.family.provenance = Provenance::constructed;
  for (const auto& sup : supports) {
    Block b;
    b.reserve(w);
    for (auto j : sup) b.push_back(ProjPoint::from_index(j, c.field.q()));
    rep.family.blocks.push_back(std::move(b));
  }
  rep.design = verify_design(rep.family, t);
  return rep;
}

DesignReport min_weight_support_design(const Field& f, const Subspace& w,
                                       std::uint64_t k,
                                       const EnumOptions& opts,
                                       const CodeCaps& caps) {
  const BlockFamily fam = enumerate_blocks(f, w, k, EnumMethod::orbit, opts);
  if (fam.blocks.empty())
    throw std::invalid_argument("min_weight_support_design: empty family");
  const BlockFamily comp = complement_family(fam);
  const DesignReport rep = verify_design(comp, 3);

  // Cross-check against the actual codewords when the scan is affordable:
  // a nonempty family forces the minimum distance down to q+1-k, and the
  // minimum-weight supports must be exactly the block complements.
  const LinearCode c = code_from_subspace(f, w);
  if (projective_class_count(f.q(), c.dim()) <= caps.word_cap) {
    if (min_distance(c, caps) != f.q() + 1 - k)
      throw std::logic_error(
          "min_weight_support_design: distance differs from q+1-k");
    const auto sd = support_design(c, f.q() + 1 - k, 3, caps);
    if (sd.family.blocks != comp.blocks)
      throw std::logic_error(
          "min_weight_support_design: supports differ from complements");
  }
  return rep;
}

Row monomial_action_word(const Field& f, const Mat2& g, std::uint64_t k,
                         const Row& word) {
  const std::uint64_t q = f.q();
  if (word.size() != q + 1)
    throw std::invalid_argument("monomial_action_word: length must be q+1");
  if (f.sub(f.mul(g.a, g.d), f.mul(g.b, g.c)) == 0)
    throw std::invalid_argument("monomial_action_word: singular matrix");
  Row out(q + 1, 0);
  for (std::uint64_t i = 0; i <= q; ++i) {
    const Code px = (i < q) ? i : 1;  // homogeneous pair of the i-th point
    const Code py = (i < q) ? 1 : 0;
    const Code u = f.sub(f.mul(g.d, px), f.mul(g.b, py));
    const Code v = f.sub(f.mul(g.a, py), f.mul(g.c, px));
    std::uint64_t src;
    Code scale;
    if (v != 0) {
      src = f.div(u, v);
      scale = f.pow(v, static_cast<long long>(k));
    } else {
      src = q;
      scale = f.pow(u, static_cast<long long>(k));
    }
    out[i] = f.mul(scale, word[src]);
  }
  return out;
}

// --- the ternary constraint-pair pipeline ----------------------------------

namespace {

// 2m parity rows over F_3: digit j of x (rows 0..m-1) and of x^{-1}
// (rows m..2m-1), one column per x in F_q^x, ascending by code.
Matrix melas_parity(const Field& fq) {
  const std::uint64_t m = fq.e(), q = fq.q(), n = q - 1;
  Matrix h(2 * m, Row(n, 0));
  for (Code x = 1; x < q; ++x) {
    const auto dx = fq.digits(x);
    const auto di = fq.digits(fq.inv(x));
    for (std::uint64_t j = 0; j < m; ++j) {
      h[j][x - 1] = dx[j];
      h[m + j][x - 1] = di[j];
    }
  }
  return h;
}

struct MelasCore {
  LinearCode code;
  WeightDist dist;
  BigInt a3, a5;
};

MelasCore melas_core(std::uint64_t m, const CodeCaps& caps) {
  MelasCore core;
  core.code = melas_code(m);
  const Field f3 = core.code.field;
  const Field fq = Field::make(3, m);
  const std::uint64_t q = fq.q(), n = q - 1;
  if (m > 20 || q * q > caps.word_cap)  // q^2 would overflow past m = 20
    throw std::runtime_error("melas: dual enumeration exceeds the word cap");

  std::vector<Code> tr(q), invt(q, 0);
  for (Code z = 0; z < q; ++z) {
    Code acc = z;
    for (std::uint64_t j = 1; j < m; ++j) acc = fq.add(acc, fq.frobenius(z, j));
    if (acc >= 3) throw std::logic_error("melas: trace left the prime field");
    tr[z] = acc;
  }
  for (Code x = 1; x < q; ++x) invt[x] = fq.inv(x);

  Matrix h = melas_parity(fq);
  rref_in_place(f3, h);
  if (h.size() != 2 * m)
    throw std::logic_error("melas: parity matrix rank is not 2m");

  // The q^2 trace words.  Containment in the parity row space, together
  // with distinctness and |row space| = 3^{2m}, proves they are exactly
  // the dual code; then the big-field transform gives the distribution.
  std::set<Row> seen;
  std::vector<std::uint64_t> tally(n + 1, 0);
  Row word(n);
  for (Code a = 0; a < q; ++a)
    for (Code b = 0; b < q; ++b) {
      std::uint64_t wt = 0;
      for (Code x = 1; x < q; ++x) {
        const Code val = tr[fq.add(fq.mul(a, x), fq.mul(b, invt[x]))];
        word[x - 1] = val;
        if (val) ++wt;
      }
      if (!reduces_to_zero(f3, h, word))
        throw std::logic_error("melas: trace word outside the parity space");
      if (!seen.insert(word).second)
        throw std::logic_error("melas: duplicate trace word");
      ++tally[wt];
    }

  WeightDist dd;
  dd.n = n;
  dd.dim = 2 * m;
  dd.counts.assign(n + 1, 0);
  for (std::uint64_t w = 0; w <= n; ++w) dd.counts[w] = tally[w];

  core.dist = macwilliams_dual_distribution(f3, dd);
  if (core.dist.dim != core.code.dim())
    throw std::logic_error("melas: transformed dimension mismatch");
  BigInt total = 0;
  for (const BigInt& a : core.dist.counts) total += a;
  if (core.dist.counts[0] != 1 ||
      total != boost::multiprecision::pow(
                   BigInt(3), static_cast<unsigned>(core.dist.dim)))
    throw std::logic_error("melas: distribution fails the size check");
  // Weight 2 is not zero here: both defining sums kill a*(e_x + e_{-x})
  // because (-x)^{-1} = -x^{-1}, and conversely ax + by = 0 together with
  // ax^{-1} + by^{-1} = 0 forces y = -x and b = a.  That is (q-1)/2
  // supports times two scalars, i.e. exactly q - 1 words.
  if (core.dist.counts[1] != 0 || core.dist.counts[2] != BigInt(q - 1))
    throw std::logic_error("melas: weight-1/2 counts disagree with the sign pairs");

  core.a3 = core.dist.counts[3];
  core.a5 = core.dist.counts[5];
  if (core.a3 != 0)
    throw std::logic_error("melas: A3 is nonzero");
  const long long sgn = (m % 2 == 0) ? 1 : -1;
  const BigInt inner = BigInt(q) * q + BigInt(sgn - 14) * q + 36;
  const BigInt num = 4 * BigInt(q - 1) * inner;
  if (num % 15 != 0)
    throw std::logic_error("melas: A5 closed form is not divisible by 15");
  if (core.a5 != num / 15)
    throw std::logic_error("melas: A5 disagrees with the closed form");
  return core;
}

std::uint64_t to_u64(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(UINT64_MAX))
    throw std::logic_error(std::string(what) + ": out of range");
  return v.convert_to<std::uint64_t>();
}

}  // namespace

LinearCode melas_code(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("melas_code: m must be >= 2");
  const Field fq = Field::make(3, m);
  const Field f3 = Field::make(3, 1);
  const std::uint64_t q = fq.q(), n = q - 1;

  const Matrix h = melas_parity(fq);
  if (matrix_rank(f3, h) != 2 * m)
    throw std::logic_error("melas_code: parity rank is not 2m");
  Matrix gen = kernel_basis(f3, h, n);
  rref_in_place(f3, gen);
  if (gen.size() != n - 2 * m)
    throw std::logic_error("melas_code: dimension is not q-1-2m");
  LinearCode code{f3, n, std::move(gen)};

  // Sampled sanity: random codewords satisfy both defining constraints in
  // big-field arithmetic, independent of the basis used for the expansion.
  std::mt19937_64 rng(kDefaultSeed);
  for (int s = 0; s < 16; ++s) {
    Row word(n, 0);
    for (const auto& row : code.gen) {
      const Code coeff = rng() % 3;
      if (coeff == 0) continue;
      for (std::uint64_t j = 0; j < n; ++j)
        word[j] = f3.add(word[j], f3.mul(coeff, row[j]));
    }
    Code s1 = 0, s2 = 0;
    for (Code x = 1; x < q; ++x) {
      const Code cx = word[x - 1];  // prime-field codes embed as themselves
      s1 = fq.add(s1, fq.mul(cx, x));
      s2 = fq.add(s2, fq.mul(cx, fq.inv(x)));
    }
    if (s1 != 0 || s2 != 0)
      throw std::logic_error("melas_code: sampled word violates a constraint");
  }
  return code;
}

std::pair<BigInt, BigInt> melas_a3_a5(std::uint64_t m, const CodeCaps& caps) {
  const MelasCore core = melas_core(m, caps);
  return {core.a3, core.a5};
}

std::uint64_t lambda2(std::uint64_t m, const EnumOptions& opts,
                      const CodeCaps& caps) {
  const auto [a3, a5] = melas_a3_a5(m, caps);
  (void)a3;
  const Field fq = Field::make(3, m);
  const std::uint64_t q = fq.q();

  const BigInt den = BigInt(32) * (q - 1);
  if ((5 * a5) % den != 0)
    throw std::logic_error("lambda2: 5 A5 is not divisible by 32(q-1)");
  const BigInt from_a5 = 5 * a5 / den;

  const long long sgn = (m % 2 == 0) ? 1 : -1;
  const BigInt inner = BigInt(q) * q + BigInt(sgn - 14) * q + 36;
  if (inner % 24 != 0)
    throw std::logic_error("lambda2: closed form is not divisible by 24");
  const BigInt closed = inner / 24;
  if (from_a5 != closed)
    throw std::logic_error("lambda2: the two formulas disagree");

  const std::uint64_t lam = to_u64(closed, "lambda2");
  // Line-model oracle whenever the stabilized scan fits the cap.
  if (binom64(q - 2, 4) <= opts.subset_cap) {
    if (lambda_count(fq, Subspace::lucas(fq, 7), 7, opts) != lam)
      throw std::logic_error("lambda2: enumeration oracle disagrees");
  }
  return lam;
}

std::uint64_t lambda1(std::uint64_t m, const EnumOptions& opts,
                      const CodeCaps& caps) {
  const std::uint64_t lam2 = lambda2(m, opts, caps);
  const std::uint64_t lam1 = 4 * lam2;
  const Field fq = Field::make(3, m);
  const std::uint64_t q = fq.q();

  if (binom64(q + 1, 6) <= opts.subset_cap) {
    const CayleyCtx ctx = CayleyCtx::make(fq);
    const auto six = six_subset_family(ctx, opts);
    const BlockFamily fam = enumerate_blocks(fq, Subspace::lucas(fq, 7), 7,
                                             EnumMethod::orbit, opts);
    if (six.size() != 7 * fam.blocks.size())
      throw std::logic_error("lambda1: factor-7 identity fails");
    // |family| * C(6,3) = lambda1 * C(q+1,3)
    if (BigInt(six.size()) * 20 != BigInt(lam1) * binom64(q + 1, 3))
      throw std::logic_error("lambda1: design-count identity fails");
  }
  return lam1;
}

MelasReport melas_report(std::uint64_t m, const EnumOptions& opts,
                         const CodeCaps& caps) {
  MelasReport rep;
  MelasCore core = melas_core(m, caps);
  rep.m = m;
  rep.q = Field::make(3, m).q();
  rep.a3 = core.a3;
  rep.a5 = core.a5;
  rep.dist = std::move(core.dist);
  rep.lam2 = lambda2(m, opts, caps);
  rep.lam1 = lambda1(m, opts, caps);
  rep.oracle_agreement = true;  // every cross-check above throws on failure
  return rep;
}

}  // namespace pgldes
