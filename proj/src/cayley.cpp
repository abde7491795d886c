#include "pgldes/cayley.hpp"

#include <algorithm>
#include <iterator>
#include <random>
#include <stdexcept>

namespace pgldes {

CayleyCtx CayleyCtx::make(const Field& f) {
  CayleyCtx ctx;
  ctx.base_ = f;
  ctx.ext_ = ExtField(f);
  const ExtField& E = ctx.ext_;
  const std::uint64_t q = f.q();

  if (f.p() != 2) {
    Code nonsq = 0;
    for (Code a = 1; a < q; ++a)
      if (!f.is_square(a)) {
        nonsq = a;
        break;
      }
    for (Code z = q; z < E.size(); ++z)  // roots of a non-square avoid F_q
      if (E.mul(z, z) == nonsq) {
        ctx.xi_ = z;
        break;
      }
    if (ctx.xi_ == 0) throw std::logic_error("cayley: no square root found");
    ctx.xi_q_ = E.frobenius_q(ctx.xi_);
    if (ctx.xi_q_ != E.neg(ctx.xi_))
      throw std::logic_error("cayley: xi^q != -xi");
  } else {
    for (Code z = 0; z < E.size(); ++z)
      if (E.add(E.frobenius_q(z), z) == 1) {
        ctx.xi_ = z;
        break;
      }
    if (ctx.xi_ == 0) throw std::logic_error("cayley: no trace-1 solution");
    ctx.xi_q_ = E.frobenius_q(ctx.xi_);
    if (E.add(ctx.xi_q_, ctx.xi_) != 1)
      throw std::logic_error("cayley: xi^q + xi != 1");
  }

  ctx.tab_.assign(q + 1, 0);
  for (Code x = 0; x < q; ++x) {
    const Code u = E.div(E.sub(x, ctx.xi_), E.sub(x, ctx.xi_q_));
    if (E.norm_to_base(u) != 1)
      throw std::logic_error("cayley: image off the unit circle");
    ctx.tab_[x] = u;
  }
  ctx.tab_[q] = 1;  // the transform sends infinity to 1
  for (std::uint64_t i = 0; i <= q; ++i)
    if (!ctx.inv_.emplace(ctx.tab_[i], i).second)
      throw std::logic_error("cayley: transform is not injective");
  return ctx;
}

Code CayleyCtx::kappa(const ProjPoint& pt) const {
  return tab_[pt.index(base_.q())];
}

ProjPoint CayleyCtx::kappa_inv(Code u) const {
  const auto it = inv_.find(u);
  if (it == inv_.end())
    throw std::invalid_argument("kappa_inv: not a transform value");
  return ProjPoint::from_index(it->second, base_.q());
}

UnitBlock CayleyCtx::image(const Block& b) const {
  UnitBlock t;
  t.reserve(b.size());
  for (const auto& pt : b) t.push_back(kappa(pt));
  std::sort(t.begin(), t.end());
  return t;
}

Block CayleyCtx::preimage(const UnitBlock& t) const {
  Block b;
  b.reserve(t.size());
  for (Code u : t) b.push_back(kappa_inv(u));
  std::sort(b.begin(), b.end());
  return b;
}

std::vector<Code> elem_sym_all(const ExtField& ext,
                               const std::vector<Code>& t) {
  std::vector<Code> e(t.size() + 1, 0);
  e[0] = 1;
  std::size_t used = 0;
  for (Code u : t) {
    ++used;
    for (std::size_t a = used; a >= 1; --a)
      e[a] = ext.add(e[a], ext.mul(u, e[a - 1]));
  }
  return e;
}

Code elementary_symmetric(const ExtField& ext, const std::vector<Code>& t,
                          std::uint64_t a) {
  if (a > t.size())
    throw std::invalid_argument("elementary_symmetric: index out of range");
  return elem_sym_all(ext, t)[a];
}

std::vector<std::uint64_t> reduced_conditions(std::uint64_t k,
                                              std::uint64_t p) {
  const auto full = forbidden_set(k, p);
  // The index set is symmetric under a <-> k-a; keep the lower half.
  for (std::uint64_t a : full)
    if (!std::binary_search(full.begin(), full.end(), k - a))
      throw std::logic_error("reduced_conditions: asymmetric index set");
  std::vector<std::uint64_t> out;
  for (std::uint64_t a : full)
    if (2 * a <= k) out.push_back(a);
  return out;
}

bool unit_block_test_lucas(const CayleyCtx& ctx, const UnitBlock& t,
                           std::uint64_t k) {
  if (t.size() != k)
    throw std::invalid_argument("unit_block_test_lucas: size mismatch");
  for (Code u : t)
    if (ctx.ext().norm_to_base(u) != 1)
      throw std::invalid_argument("unit_block_test_lucas: not on the circle");
  const auto es = elem_sym_all(ctx.ext(), t);
  for (std::uint64_t a : reduced_conditions(k, ctx.base().p()))
    if (es[a] != 0) return false;
  return true;
}

bool single_equation_classify(std::uint64_t p, std::uint64_t k) {
  if (k < 3)
    throw std::invalid_argument("single_equation_classify: k must be >= 3");
  const bool direct = reduced_conditions(k, p).size() == 1;
  const bool closed =
      p == 2 ? (k == 5)
             : (k == 2 * p - 3 || k == 2 * p - 2 || k == 3 * p - 2);
  if (direct != closed)
    throw std::logic_error(
        "single_equation_classify: direct orbit count disagrees with the "
        "closed form");
  return direct;
}

// ---------------------------------------------------------------------------
// The transformed subspace over F_{q^2}.  The coordinate change behind the
// transform sends X - xY to a scalar multiple of U - kappa(x)V (and Y to
// U - V), so a point-set product lands in the model family exactly when
// its circle image satisfies the transformed subspace's linear conditions.

namespace {

std::vector<Code> ext_linear_power(const ExtField& E, Code s, Code t,
                                   std::uint64_t n) {
  const std::uint64_t p = E.base().p();
  std::vector<Code> c(n + 1);
  for (std::uint64_t j = 0; j <= n; ++j) {
    const Code bin = binom_mod_p(n, j, p);  // prime-subfield code
    c[j] = E.mul(bin, E.mul(E.pow(s, static_cast<long long>(n - j)),
                            E.pow(t, static_cast<long long>(j))));
  }
  return c;
}

std::vector<Code> ext_conv(const ExtField& E, const std::vector<Code>& u,
                           const std::vector<Code>& v) {
  std::vector<Code> out(u.size() + v.size() - 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i + j] = E.add(out[i + j], E.mul(u[i], v[j]));
  }
  return out;
}

Row ext_gl2_act(const ExtField& E, Code a, Code b, Code c, Code d,
                const Row& f) {
  const std::uint64_t k = f.size() - 1;
  Row out(k + 1, 0);
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (f[i] == 0) continue;
    const auto left = ext_linear_power(E, d, E.neg(b), k - i);
    const auto right = ext_linear_power(E, E.neg(c), a, i);
    const auto prod = ext_conv(E, left, right);
    for (std::size_t m = 0; m < prod.size(); ++m)
      out[m] = E.add(out[m], E.mul(f[i], prod[m]));
  }
  return out;
}

}  // namespace

Matrix transformed_subspace(const CayleyCtx& ctx, const Subspace& w) {
  const ExtField& E = ctx.ext();
  const Code minus_one = E.neg(1);
  Matrix rows;
  for (const auto& r : w.rows())
    rows.push_back(ext_gl2_act(E, minus_one, ctx.xi(), minus_one,
                               ctx.xi_conj(), r));
  rref_in_place(E, rows);
  if (rows.size() != w.dim())
    throw std::logic_error(
        "transformed_subspace: rank changed under the coordinate change");
  return rows;
}

Matrix transformed_conditions(const CayleyCtx& ctx, const Subspace& w) {
  return kernel_basis(ctx.ext(), transformed_subspace(ctx, w),
                      w.degree() + 1);
}

// ---------------------------------------------------------------------------
// Subset scan over the circle, keeping the elementary symmetric functions
// of the chosen elements on a per-depth stack (same colex walk and branch
// split as the line-model scanner).

namespace {

class CircleScanner {
 public:
  CircleScanner(const ExtField& E, const std::vector<Code>& circ,
                const Matrix& folded, std::uint64_t k)
      : E_(E), circ_(circ), folded_(folded), k_(k) {
    es_.assign(k + 1, std::vector<Code>(k + 1, 0));
    es_[0][0] = 1;
    chosen_.resize(k);
  }

  void run_all(std::vector<UnitBlock>& out) {
    out_ = &out;
    for (std::uint64_t top = k_ - 1; top < circ_.size(); ++top) {
      push(0, top);
      rec(1, top);
    }
  }

  void run_branch(std::uint64_t top, std::vector<UnitBlock>& out) {
    out_ = &out;
    push(0, top);
    rec(1, top);
  }

 private:
  void push(std::uint64_t depth, std::uint64_t idx) {
    const auto& src = es_[depth];
    auto& dst = es_[depth + 1];
    const Code u = circ_[idx];
    dst[0] = 1;
    for (std::uint64_t a = 1; a <= depth; ++a)
      dst[a] = E_.add(src[a], E_.mul(u, src[a - 1]));
    dst[depth + 1] = E_.mul(u, src[depth]);
    chosen_[k_ - 1 - depth] = idx;
  }

  void rec(std::uint64_t depth, std::uint64_t hi) {
    if (depth == k_) {
      leaf();
      return;
    }
    const std::uint64_t need = k_ - depth;
    for (std::uint64_t idx = need - 1; idx < hi; ++idx) {
      push(depth, idx);
      rec(depth + 1, idx);
    }
  }

  void leaf() {
    const auto& es = es_[k_];
    for (const auto& row : folded_) {
      Code acc = 0;
      for (std::uint64_t a = 0; a <= k_; ++a)
        acc = E_.add(acc, E_.mul(row[a], es[a]));
      if (acc != 0) return;
    }
    UnitBlock t;
    t.reserve(k_);
    for (auto idx : chosen_) t.push_back(circ_[idx]);
    out_->push_back(std::move(t));
  }

  const ExtField& E_;
  const std::vector<Code>& circ_;
  const Matrix& folded_;
  std::uint64_t k_;
  std::vector<std::vector<Code>> es_;
  std::vector<std::uint64_t> chosen_;
  std::vector<UnitBlock>* out_ = nullptr;
};

}  // namespace

std::vector<UnitBlock> blocks_from_linear_conditions(
    const CayleyCtx& ctx, std::uint64_t k,
    const std::vector<std::vector<Code>>& rows, const EnumOptions& opts) {
  if (k == 0)
    throw std::invalid_argument("blocks_from_linear_conditions: k must be positive");
  for (const auto& r : rows)
    if (r.size() != k + 1)
      throw std::invalid_argument(
          "blocks_from_linear_conditions: rows must have length k+1");
  const ExtField& E = ctx.ext();
  const std::vector<Code>& circ = ctx.circle();
  const std::uint64_t n = circ.size();
  std::vector<UnitBlock> out;
  if (k > n) return out;
  if (binom64(n, k) > opts.subset_cap)
    throw std::runtime_error(
        "blocks_from_linear_conditions: subset cap exceeded");

  // Fold the alternating signs of the block condition into the rows, so a
  // leaf test is a plain dot product against (e_0, ..., e_k).
  Matrix folded(rows.begin(), rows.end());
  for (auto& r : folded)
    for (std::size_t a = 1; a < r.size(); a += 2) r[a] = E.neg(r[a]);

  if (opts.workers <= 1) {
    CircleScanner(E, circ, folded, k).run_all(out);
  } else {
    const std::uint64_t branches = n - (k - 1);
    std::vector<std::vector<UnitBlock>> parts(branches);
    parallel_indices(branches, opts.workers, [&](std::size_t bi) {
      CircleScanner sc(E, circ, folded, k);
      sc.run_branch(k - 1 + bi, parts[bi]);
    });
    for (auto& part : parts)
      for (auto& t : part) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModelEquivalence model_equivalence(const Field& f, const Subspace& w,
                                   std::uint64_t k, const EnumOptions& opts) {
  ModelEquivalence rep;
  const BlockFamily fam = enumerate_blocks(f, w, k, EnumMethod::orbit, opts);
  const CayleyCtx ctx = CayleyCtx::make(f);
  const Matrix cond = transformed_conditions(ctx, w);

  std::vector<UnitBlock> images;
  images.reserve(fam.blocks.size());
  for (const auto& b : fam.blocks) images.push_back(ctx.image(b));
  std::sort(images.begin(), images.end());

  const std::vector<UnitBlock> circle_side =
      blocks_from_linear_conditions(ctx, k, cond, opts);

  rep.line_blocks = images.size();
  rep.circle_blocks = circle_side.size();
  bool ok = images == circle_side;

  if (ok && w.rows() == Subspace::lucas(f, k).rows()) {
    // Lucas case: the reduced e_a conditions must agree with the
    // transformed-subspace membership just used.
    for (const auto& t : circle_side)
      if (!unit_block_test_lucas(ctx, t, k)) {
        ok = false;
        rep.mismatch = t;
        break;
      }
  }
  if (!ok && !rep.mismatch) {
    std::vector<UnitBlock> diff;
    std::set_symmetric_difference(images.begin(), images.end(),
                                  circle_side.begin(), circle_side.end(),
                                  std::back_inserter(diff));
    if (!diff.empty()) rep.mismatch = diff.front();
  }
  rep.equal = ok;
  return rep;
}

bool aux_e2_nonvanishing(const CayleyCtx& ctx, std::uint64_t trials,
                         std::uint64_t seed) {
  if (ctx.base().p() != 3)
    throw std::invalid_argument(
        "aux_e2_nonvanishing: a characteristic-3 statement");
  const ExtField& E = ctx.ext();
  std::vector<Code> pool;
  for (Code u : ctx.circle())
    if (u != 1) pool.push_back(u);
  const std::uint64_t n = pool.size();
  if (n < 5) return true;

  const auto check = [&](const std::vector<std::uint64_t>& idx) {
    std::vector<Code> t;
    t.reserve(7);
    for (auto i : idx) t.push_back(pool[i]);
    t.push_back(1);
    t.push_back(1);
    return elem_sym_all(E, t)[2] != 0;
  };

  if (trials == 0) {
    if (binom64(n, 5) > 100'000'000ULL)
      throw std::runtime_error(
          "aux_e2_nonvanishing: exhaustive scan too large; give a trial "
          "count");
    std::vector<std::uint64_t> idx = {0, 1, 2, 3, 4};
    do {
      if (!check(idx)) return false;
    } while (next_combination_colex(idx, n));
    return true;
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<std::uint64_t> idx;
    while (idx.size() < 5) {
      const std::uint64_t cand = rng() % n;
      if (std::find(idx.begin(), idx.end(), cand) == idx.end())
        idx.push_back(cand);
    }
    std::sort(idx.begin(), idx.end());
    if (!check(idx)) return false;
  }
  return true;
}

std::vector<UnitBlock> six_subset_family(const CayleyCtx& ctx,
                                         const EnumOptions& opts) {
  if (ctx.base().p() != 3)
    throw std::invalid_argument(
        "six_subset_family: a characteristic-3 statement");
  const ExtField& E = ctx.ext();
  const std::vector<Code>& circ = ctx.circle();
  const std::uint64_t n = circ.size();
  std::vector<UnitBlock> out;
  if (n < 6) return out;
  if (binom64(n, 6) > opts.subset_cap)
    throw std::runtime_error("six_subset_family: subset cap exceeded");

  std::vector<std::uint64_t> idx = {0, 1, 2, 3, 4, 5};
  std::vector<Code> a(6);
  do {
    for (std::size_t i = 0; i < 6; ++i) a[i] = circ[idx[i]];
    const auto es = elem_sym_all(E, a);
    if (E.mul(es[4], es[2]) != E.mul(es[5], es[1])) continue;

    // Deletion correspondence with the degree-7 circle blocks: recover the
    // deleted point and confirm the augmented 7-set satisfies e_2 = 0.
    if (es[1] == 0)
      throw std::logic_error("six_subset_family: member with e_1 = 0");
    const Code x = E.neg(E.div(es[2], es[1]));
    if (E.norm_to_base(x) != 1)
      throw std::logic_error("six_subset_family: recovered point off circle");
    if (std::find(a.begin(), a.end(), x) != a.end())
      throw std::logic_error(
          "six_subset_family: recovered point inside the subset");
    std::vector<Code> b = a;
    b.push_back(x);
    if (elem_sym_all(E, b)[2] != 0)
      throw std::logic_error("six_subset_family: augmented set fails e_2 = 0");
    out.push_back(a);
  } while (next_combination_colex(idx, n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pgldes
