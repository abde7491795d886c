#include "pgldes/designs.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace pgldes {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::brute: return "brute";
    case Provenance::orbit: return "orbit";
    case Provenance::constructed: return "constructed";
  }
  return "?";
}

const char* to_string(EmptinessStatus s) {
  switch (s) {
    case EmptinessStatus::empty_p_divides: return "empty_p_divides";
    case EmptinessStatus::nonempty_witness: return "nonempty_witness";
    case EmptinessStatus::exhausted_empty: return "exhausted_empty";
  }
  return "?";
}

HomPoly f_s(const Field& f, const Block& s) {
  if (s.empty()) throw std::invalid_argument("f_s: empty point set");
  Block copy = s;
  std::sort(copy.begin(), copy.end());
  if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
    throw std::invalid_argument("f_s: duplicate points");
  HomPoly r{{1}};
  for (const auto& pt : s) {
    HomPoly lin;
    lin.coef = pt.is_infinity() ? std::vector<Code>{0, 1}
                                : std::vector<Code>{1, f.neg(pt.v)};
    r = poly_mul(f, r, lin);
  }
  return r;
}

bool block_membership(const Field& f, const Subspace& w, const Block& s) {
  if (s.size() != w.degree())
    throw std::invalid_argument("block_membership: size/degree mismatch");
  return w.contains(f, f_s(f, s));
}

// ---------------------------------------------------------------------------
// Subset scan engine.  Walks r-subsets of a list of linear forms in colex
// order while maintaining the running product on a stack, and reports the
// subsets whose completed product is annihilated by every condition row.
// The per-branch split (on the largest chosen index) makes parallel runs
// produce byte-identical results.

namespace {

struct LinearFactor {
  Code s, t;  // the form sX + tY
};

void mul_linear(const Field& f, const std::vector<Code>& src,
                const LinearFactor& lf, std::vector<Code>& dst) {
  const std::size_t m = src.size();
  dst.resize(m + 1);
  dst[0] = f.mul(lf.s, src[0]);
  for (std::size_t j = 1; j < m; ++j)
    dst[j] = f.add(f.mul(lf.s, src[j]), f.mul(lf.t, src[j - 1]));
  dst[m] = f.mul(lf.t, src[m - 1]);
}

struct ScanConfig {
  Field f;
  Matrix ann;                         // condition rows, length base+r
  HomPoly base;                       // fixed prefix product
  std::vector<LinearFactor> factors;  // candidate forms
  std::uint64_t r = 0;
  bool collect = false;
  std::uint64_t max_hits = 0;  // 0 = unbounded
};

struct ScanOutput {
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint64_t>> hits;
};

class ProductScanner {
 public:
  explicit ProductScanner(const ScanConfig& cfg) : cfg_(cfg) {
    stack_.resize(cfg.r + 1);
    stack_[0] = cfg.base.coef;
    chosen_.resize(cfg.r);
  }

  void run_all(ScanOutput& out) {
    out_ = &out;
    if (cfg_.r == 0) {
      leaf(0);
      return;
    }
    for (std::uint64_t top = cfg_.r - 1; top < cfg_.factors.size(); ++top) {
      if (stop()) return;
      push(0, top);
      rec(1, top);
    }
  }

  void run_branch(std::uint64_t top, ScanOutput& out) {
    out_ = &out;
    push(0, top);
    rec(1, top);
  }

 private:
  bool stop() const { return cfg_.max_hits && out_->count >= cfg_.max_hits; }

  void push(std::uint64_t depth, std::uint64_t idx) {
    mul_linear(cfg_.f, stack_[depth], cfg_.factors[idx], stack_[depth + 1]);
    chosen_[cfg_.r - 1 - depth] = idx;
  }

  void rec(std::uint64_t depth, std::uint64_t hi) {
    if (depth == cfg_.r) {
      leaf(depth);
      return;
    }
    const std::uint64_t need = cfg_.r - depth;
    for (std::uint64_t idx = need - 1; idx < hi; ++idx) {
      if (stop()) return;
      push(depth, idx);
      rec(depth + 1, idx);
    }
  }

  void leaf(std::uint64_t depth) {
    const auto& coef = stack_[depth];
    const Field& f = cfg_.f;
    for (const auto& row : cfg_.ann) {
      Code acc = 0;
      for (std::size_t j = 0; j < coef.size(); ++j)
        acc = f.add(acc, f.mul(row[j], coef[j]));
      if (acc != 0) return;
    }
    ++out_->count;
    if (cfg_.collect) out_->hits.push_back(chosen_);
  }

  const ScanConfig& cfg_;
  std::vector<std::vector<Code>> stack_;
  std::vector<std::uint64_t> chosen_;
  ScanOutput* out_ = nullptr;
};

ScanOutput scan_subsets(const ScanConfig& cfg, unsigned workers,
                        std::uint64_t cap) {
  const std::uint64_t n = cfg.factors.size();
  if (cfg.r > n) return {};  // nothing to choose
  if (binom64(n, cfg.r) > cap)
    throw std::runtime_error("scan: subset enumeration cap exceeded");
  ScanOutput out;
  if (workers <= 1 || cfg.r == 0 || cfg.max_hits != 0) {
    ProductScanner(cfg).run_all(out);
    return out;
  }
  const std::uint64_t branches = n - (cfg.r - 1);
  std::vector<ScanOutput> parts(branches);
  parallel_indices(branches, workers, [&](std::size_t bi) {
    ProductScanner sc(cfg);
    sc.run_branch(cfg.r - 1 + bi, parts[bi]);
  });
  for (auto& part : parts) {
    out.count += part.count;
    for (auto& h : part.hits) out.hits.push_back(std::move(h));
  }
  return out;
}

void validate_family_args(const Field& f, const Subspace& w, std::uint64_t k) {
  if (k < 3 || k > f.q() + 1)
    throw std::invalid_argument("block size k must satisfy 3 <= k <= q+1");
  if (w.degree() != k)
    throw std::invalid_argument("subspace degree must equal k");
}

void validate_invariance_or_throw(const Field& f, const Subspace& w,
                                  const EnumOptions& opts) {
  if (!opts.validate_invariance) return;
  const auto r =
      check_gl2_invariance(f, w, opts.invariance_trials, opts.seed);
  if (!r)
    throw std::invalid_argument(
        "subspace failed the GL2-invariance sample check");
}

ScanConfig stabilized_config(const Field& f, const Subspace& w,
                             std::uint64_t k, bool collect) {
  ScanConfig cfg;
  cfg.f = f;
  cfg.ann = w.annihilator(f);
  cfg.base = f_s(f, Block{ProjPoint::finite(0), ProjPoint::finite(1),
                          ProjPoint::infinity()});
  for (Code t = 2; t < f.q(); ++t)
    cfg.factors.push_back(LinearFactor{1, f.neg(t)});
  cfg.r = k - 3;
  cfg.collect = collect;
  return cfg;
}

Block stabilized_block_from_hit(const std::vector<std::uint64_t>& hit,
                                std::uint64_t /*q*/) {
  Block b{ProjPoint::finite(0), ProjPoint::finite(1)};
  for (auto idx : hit) b.push_back(ProjPoint::finite(idx + 2));
  b.push_back(ProjPoint::infinity());
  return b;
}

std::vector<std::uint64_t> block_key(const Block& b, std::uint64_t q) {
  std::vector<std::uint64_t> key;
  key.reserve(b.size());
  for (const auto& pt : b) key.push_back(pt.index(q));
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace

std::uint64_t lambda_count(const Field& f, const Subspace& w, std::uint64_t k,
                           const EnumOptions& opts) {
  validate_family_args(f, w, k);
  validate_invariance_or_throw(f, w, opts);
  const ScanConfig cfg = stabilized_config(f, w, k, false);
  return scan_subsets(cfg, opts.workers, opts.subset_cap).count;
}

std::vector<Block> stabilized_blocks(const Field& f, const Subspace& w,
                                     std::uint64_t k,
                                     const EnumOptions& opts) {
  validate_family_args(f, w, k);
  validate_invariance_or_throw(f, w, opts);
  const ScanConfig cfg = stabilized_config(f, w, k, true);
  const ScanOutput out = scan_subsets(cfg, opts.workers, opts.subset_cap);
  std::vector<Block> blocks;
  blocks.reserve(out.hits.size());
  for (const auto& hit : out.hits)
    blocks.push_back(stabilized_block_from_hit(hit, f.q()));
  return blocks;
}

BlockFamily enumerate_blocks(const Field& f, const Subspace& w,
                             std::uint64_t k, EnumMethod method,
                             const EnumOptions& opts) {
  validate_family_args(f, w, k);
  const std::uint64_t q = f.q();
  BlockFamily fam;
  fam.v = q + 1;
  fam.k = k;

  if (method == EnumMethod::brute) {
    ScanConfig cfg;
    cfg.f = f;
    cfg.ann = w.annihilator(f);
    cfg.base = HomPoly{{1}};
    for (Code t = 0; t < q; ++t) cfg.factors.push_back(LinearFactor{1, f.neg(t)});
    cfg.factors.push_back(LinearFactor{0, 1});  // infinity
    cfg.r = k;
    cfg.collect = true;
    const ScanOutput out = scan_subsets(cfg, opts.workers, opts.subset_cap);
    if (out.count > opts.block_cap)
      throw std::runtime_error("enumerate_blocks: family exceeds block cap");
    for (const auto& hit : out.hits) {
      Block b;
      b.reserve(k);
      for (auto idx : hit) b.push_back(ProjPoint::from_index(idx, q));
      fam.blocks.push_back(std::move(b));
    }
    fam.provenance = Provenance::brute;
  } else {
    validate_invariance_or_throw(f, w, opts);
    EnumOptions stab_opts = opts;
    stab_opts.validate_invariance = false;  // already done above
    const std::vector<Block> seeds = stabilized_blocks(f, w, k, stab_opts);
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> seen;
    if (!seeds.empty()) {
      const std::vector<Pgl2> group = pgl2_all(f);
      for (const Block& seed : seeds) {
        for (const Pgl2& g : group) {
          Block img;
          img.reserve(k);
          for (const auto& pt : seed) img.push_back(pgl2_act(f, g, pt));
          std::sort(img.begin(), img.end());
          seen.insert(block_key(img, q));
          if (seen.size() > opts.block_cap)
            throw std::runtime_error(
                "enumerate_blocks: family exceeds block cap");
        }
      }
    }
    for (const auto& key : seen) {
      Block b;
      b.reserve(k);
      for (auto idx : key) b.push_back(ProjPoint::from_index(idx, q));
      fam.blocks.push_back(std::move(b));
    }
    fam.provenance = Provenance::orbit;
    // The sample check above cannot certify invariance, but membership of
    // every produced block can: verify it outright.
    for (const Block& b : fam.blocks)
      if (!block_membership(f, w, b))
        throw std::logic_error(
            "enumerate_blocks: orbit produced a non-member block");
  }

  std::sort(fam.blocks.begin(), fam.blocks.end());
  fam.blocks.erase(std::unique(fam.blocks.begin(), fam.blocks.end()),
                   fam.blocks.end());
  return fam;
}

DesignReport verify_design(const BlockFamily& fam, std::uint64_t t) {
  if (t < 1 || t > fam.k)
    throw std::invalid_argument("verify_design: need 1 <= t <= k");
  const std::uint64_t v = fam.v;
  const std::uint64_t n_tsets = binom64(v, t, 100'000'000ULL);
  if (n_tsets >= 100'000'000ULL)
    throw std::runtime_error("verify_design: too many t-subsets to tally");

  DesignReport rep;
  rep.t = t;
  rep.v = v;
  rep.k = fam.k;
  rep.b = fam.blocks.size();
  if (fam.blocks.empty()) return rep;

  std::vector<std::uint64_t> counts(n_tsets, 0);
  std::vector<std::uint64_t> idx, tset(t);
  for (const Block& blk : fam.blocks) {
    if (blk.size() != fam.k)
      throw std::invalid_argument("verify_design: block of wrong size");
    idx.clear();
    for (const auto& pt : blk) idx.push_back(pt.index(v - 1));
    if (!std::is_sorted(idx.begin(), idx.end()) ||
        std::adjacent_find(idx.begin(), idx.end()) != idx.end() ||
        idx.back() >= v)
      throw std::invalid_argument("verify_design: malformed block");
    // walk all t-subsets of the block's coordinates
    std::vector<std::uint64_t> pos(t);
    for (std::uint64_t i = 0; i < t; ++i) pos[i] = i;
    do {
      for (std::uint64_t i = 0; i < t; ++i) tset[i] = idx[pos[i]];
      ++counts[colex_rank(tset)];
    } while (next_combination_colex(pos, fam.k));
  }

  const std::uint64_t lam = counts[0];
  bool equal = true;
  for (auto c : counts)
    if (c != lam) {
      equal = false;
      break;
    }
  rep.is_design = equal;
  if (equal) {
    rep.lambda = lam;
    rep.steiner = (lam == 1);
    // internal consistency: b * C(k,t) == lambda * C(v,t)
    if (rep.b * binom64(fam.k, t) != lam * n_tsets)
      throw std::logic_error("verify_design: tally bookkeeping error");
  }
  return rep;
}

BlockFamily complement_family(const BlockFamily& fam) {
  if (fam.blocks.empty())
    throw std::invalid_argument("complement_family: empty family");
  if (fam.k >= fam.v)
    throw std::invalid_argument("complement_family: blocks cover all points");
  BlockFamily out;
  out.v = fam.v;
  out.k = fam.v - fam.k;
  out.provenance = Provenance::constructed;
  std::vector<bool> in_block(fam.v);
  for (const Block& blk : fam.blocks) {
    std::fill(in_block.begin(), in_block.end(), false);
    for (const auto& pt : blk) in_block[pt.index(fam.v - 1)] = true;
    Block c;
    c.reserve(out.k);
    for (std::uint64_t i = 0; i < fam.v; ++i)
      if (!in_block[i]) c.push_back(ProjPoint::from_index(i, fam.v - 1));
    out.blocks.push_back(std::move(c));
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

Block basic_block_subgroup(const Field& f, std::uint64_t d,
                           bool with_infinity) {
  const auto sub = f.mult_subgroup(d);  // validates d | q-1
  Block b;
  for (Code x : sub) b.push_back(ProjPoint::finite(x));
  std::uint64_t degree = d;
  if (with_infinity) {
    if ((d + 1) % f.p() == 0)
      throw std::invalid_argument(
          "basic_block_subgroup: p divides d+1, no such block");
    b.push_back(ProjPoint::infinity());
    degree = d + 1;
  }
  if (!block_membership(f, Subspace::lucas(f, degree), b))
    throw std::logic_error("basic_block_subgroup: membership check failed");
  return b;
}

Block basic_block_subfield(const Field& f, std::uint64_t m) {
  const auto sub = f.subfield(m);  // validates m | e
  Block b;
  for (Code x : sub) b.push_back(ProjPoint::finite(x));
  b.push_back(ProjPoint::infinity());
  const std::uint64_t degree = sub.size() + 1;  // p^m + 1
  if (!block_membership(f, Subspace::lucas(f, degree), b))
    throw std::logic_error("basic_block_subfield: membership check failed");
  return b;
}

Block union_carry_free(const Field& f, const std::vector<Block>& parts) {
  if (parts.size() < 2)
    throw std::invalid_argument("union_carry_free: need at least two parts");
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  for (const auto& part : parts) {
    sizes.push_back(part.size());
    total += part.size();
  }
  if (!carry_free(sizes, f.p()))
    throw std::invalid_argument("union_carry_free: sizes carry in base p");
  Block uni;
  for (const auto& part : parts) {
    if (!block_membership(f, Subspace::lucas(f, part.size()), part))
      throw std::invalid_argument(
          "union_carry_free: a part is outside its Lucas family");
    uni.insert(uni.end(), part.begin(), part.end());
  }
  std::sort(uni.begin(), uni.end());
  if (std::adjacent_find(uni.begin(), uni.end()) != uni.end())
    throw std::invalid_argument("union_carry_free: parts are not disjoint");
  if (!block_membership(f, Subspace::lucas(f, total), uni))
    throw std::logic_error("union_carry_free: union membership check failed");
  return uni;
}

namespace {

// All basic blocks of a given size that the direct constructions provide.
std::vector<Block> basic_blocks_of_size(const Field& f, std::uint64_t l) {
  std::vector<Block> out;
  const std::uint64_t q = f.q();
  if (l >= 1 && l <= q - 1 && (q - 1) % l == 0)
    out.push_back(basic_block_subgroup(f, l, false));
  if (l >= 2 && (q - 1) % (l - 1) == 0 && l % f.p() != 0)
    out.push_back(basic_block_subgroup(f, l - 1, true));
  std::uint64_t pm = f.p();
  for (std::uint64_t m = 1; m <= f.e(); ++m, pm *= f.p())
    if (f.e() % m == 0 && pm + 1 == l)
      out.push_back(basic_block_subfield(f, m));
  return out;
}

}  // namespace

EmptinessReport emptiness_oracle(const Field& f, std::uint64_t k,
                                 const EnumOptions& opts) {
  if (k < 3 || k > f.q() + 1)
    throw std::invalid_argument("emptiness_oracle: need 3 <= k <= q+1");
  EmptinessReport rep;
  if (k % f.p() == 0) {
    rep.status = EmptinessStatus::empty_p_divides;
    rep.how = "k is divisible by the characteristic";
    return rep;
  }

  // Direct single constructions.
  for (const Block& b : basic_blocks_of_size(f, k)) {
    rep.status = EmptinessStatus::nonempty_witness;
    rep.witness = b;
    rep.how = b.back().is_infinity() ? "basic block with infinity"
                                     : "multiplicative subgroup block";
    return rep;
  }

  // Carry-free union of two basic blocks, one of them moved by a group
  // element until disjoint.  A bounded prefix of the group is scanned;
  // this is only a shortcut, the stabilized scan below always decides.
  {
    constexpr std::uint64_t kGroupScanLimit = 20'000;
    const std::vector<Pgl2> group = pgl2_all(f);
    const std::uint64_t limit =
        std::min<std::uint64_t>(group.size(), kGroupScanLimit);
    for (std::uint64_t l1 = 1; 2 * l1 <= k; ++l1) {
      const std::uint64_t l2 = k - l1;
      if (!carry_free({l1, l2}, f.p())) continue;
      for (const Block& b1 : basic_blocks_of_size(f, l1)) {
        for (const Block& b2 : basic_blocks_of_size(f, l2)) {
          for (std::uint64_t gi = 0; gi < limit; ++gi) {
            Block img;
            img.reserve(l2);
            for (const auto& pt : b2)
              img.push_back(pgl2_act(f, group[gi], pt));
            std::sort(img.begin(), img.end());
            Block merged(b1);
            merged.insert(merged.end(), img.begin(), img.end());
            std::sort(merged.begin(), merged.end());
            if (std::adjacent_find(merged.begin(), merged.end()) !=
                merged.end())
              continue;  // not disjoint
            rep.status = EmptinessStatus::nonempty_witness;
            rep.witness = union_carry_free(f, {b1, img});
            rep.how = "carry-free union of two basic blocks";
            return rep;
          }
        }
      }
    }
  }

  // Decisive: look for any block through the fixed triple.
  const Subspace w = Subspace::lucas(f, k);
  ScanConfig cfg = stabilized_config(f, w, k, true);
  cfg.max_hits = 1;
  const ScanOutput out = scan_subsets(cfg, 1, opts.subset_cap);
  if (out.count > 0) {
    rep.status = EmptinessStatus::nonempty_witness;
    rep.witness = stabilized_block_from_hit(out.hits.front(), f.q());
    rep.how = "stabilized scan";
  } else {
    rep.status = EmptinessStatus::exhausted_empty;
    rep.how = "stabilized scan found nothing";
  }
  return rep;
}

SteinerReport steiner_q0_report(const Field& f, std::uint64_t m,
                                const EnumOptions& opts) {
  if (m == 0) throw std::invalid_argument("steiner_q0_report: m must be >= 1");
  SteinerReport rep;
  std::uint64_t q0 = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    q0 *= f.p();
    if (q0 > f.q()) break;
  }
  rep.q0 = q0;
  rep.applicable = (m <= f.e() && f.e() % m == 0);
  const std::uint64_t k = q0 + 1;
  const std::uint64_t q = f.q();

  if (k > q + 1) {
    // No k-subsets of the line at all; trivially empty, nothing to verify.
    rep.family.v = q + 1;
    rep.family.k = k;
    rep.design.t = 3;
    rep.design.v = q + 1;
    rep.design.k = k;
    rep.count_matches = true;
    return rep;
  }

  rep.family =
      enumerate_blocks(f, Subspace::lucas(f, k), k, EnumMethod::orbit, opts);
  rep.design = verify_design(rep.family, 3);
  if (rep.applicable) {
    rep.expected_blocks =
        q * (q * q - 1) / (q0 * (q0 * q0 - 1));
    rep.count_matches = rep.design.b == rep.expected_blocks &&
                        rep.design.is_design && rep.design.steiner;
  } else {
    rep.expected_blocks = 0;
    rep.count_matches = rep.design.b == 0;
  }
  return rep;
}

}  // namespace pgldes
