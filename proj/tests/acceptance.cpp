// End-to-end acceptance run: ten numbered checks, one PASS/FAIL line each,
// exit status = number of failures.  All comparisons are exact integer
// equalities; there are no tolerances anywhere.

#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pgldes/cayley.hpp"
#include "pgldes/codes.hpp"
#include "pgldes/designs.hpp"
#include "pgldes/gf.hpp"
#include "pgldes/polyspace.hpp"
#include "pgldes/projline.hpp"
#include "pgldes/util.hpp"

using namespace pgldes;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }

  template <typename A, typename B>
  void eq(const A& got, const B& want, const std::string& what) {
    if (got == static_cast<A>(want)) return;
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    expect(false, os.str());
  }
};

int g_failures = 0;

void criterion(int num, const std::string& label,
               const std::function<void(Checker&)>& body) {
  Checker c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": "
            << label;
  if (!c.ok) std::cout << "  (" << c.detail << ")";
  std::cout << std::endl;
  if (!c.ok) ++g_failures;
}

std::uint64_t dist_min_weight(const WeightDist& d) {
  for (std::uint64_t w = 1; w <= d.n; ++w)
    if (d.counts[w] != 0) return w;
  return 0;
}

// Scalar classes of nonzero words in a dim-dimensional space over F_q,
// saturating; used to pick the feasible distribution strategy.
std::uint64_t scalar_classes(std::uint64_t q, std::uint64_t dim) {
  std::uint64_t acc = 0, pw = 1;
  for (std::uint64_t i = 0; i < dim; ++i) {
    acc += pw;
    if (acc > (1ull << 40)) return acc;  // far beyond any cap already
    pw *= q;
  }
  return acc;
}

const std::vector<std::pair<std::uint64_t, std::uint64_t>> kPrimePowers81 = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1},
    {13, 1}, {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1},
    {31, 1}, {2, 5}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}, {53, 1},
    {59, 1}, {61, 1}, {2, 6}, {67, 1}, {71, 1}, {73, 1}, {79, 1}, {3, 4}};

}  // namespace

int main() {
  criterion(1, "degree-5 Steiner family: 68 blocks at q=16, empty at q=8",
            [](Checker& c) {
    const Field f = Field::make(2, 4);
    const Subspace w = Subspace::lucas(f, 5);
    const BlockFamily fam = enumerate_blocks(f, w, 5, EnumMethod::orbit);
    c.eq(fam.blocks.size(), std::size_t{68}, "block count");
    c.eq((f.q() + 1) * f.q() * (f.q() - 1) / 60, std::uint64_t{68},
         "closed-form count");
    const DesignReport rep = verify_design(fam, 3);
    c.expect(rep.is_design && rep.steiner, "3-(17,5,1) verification");
    c.eq(rep.lambda.value_or(0), std::uint64_t{1}, "lambda");

    // The one block through the fixed triple is {inf, 0, 1, w, w^2} with
    // w^2 + w + 1 = 0.
    const auto stab = stabilized_blocks(f, w, 5);
    c.eq(stab.size(), std::size_t{1}, "stabilized block count");
    Block expected{ProjPoint::finite(0), ProjPoint::finite(1)};
    for (Code x = 2; x < f.q(); ++x)
      if (f.add(f.add(f.mul(x, x), x), 1) == 0)
        expected.push_back(ProjPoint::finite(x));
    expected.push_back(ProjPoint::infinity());
    c.eq(expected.size(), std::size_t{5}, "two roots of x^2+x+1");
    c.expect(!stab.empty() && stab.front() == expected,
             "block through the fixed triple");

    const Field f8 = Field::make(2, 3);
    const BlockFamily none = enumerate_blocks(
        f8, Subspace::lucas(f8, 5), 5, EnumMethod::brute);
    c.expect(none.blocks.empty(), "q=8 family empty");
  });

  criterion(2, "subfield Steiner systems: 30 at q=9, 819 at q=27, none at q=8",
            [](Checker& c) {
    const auto r9 = steiner_q0_report(Field::make(3, 2), 1);
    c.expect(r9.applicable, "m=1 divides e=2");
    c.eq(r9.expected_blocks, std::uint64_t{30}, "q=9 expected");
    c.expect(r9.count_matches && r9.design.steiner, "q=9 verified S(3,4,10)");

    const auto r27 = steiner_q0_report(Field::make(3, 3), 1);
    c.eq(r27.expected_blocks, std::uint64_t{819}, "q=27 expected");
    c.expect(r27.count_matches && r27.design.steiner,
             "q=27 verified S(3,4,28)");

    const auto r8 = steiner_q0_report(Field::make(2, 3), 2);
    c.expect(!r8.applicable, "m=2 does not divide e=3");
    c.expect(r8.count_matches && r8.family.blocks.empty(), "q=8 family empty");
  });

  criterion(3, "degree-7 family: 3-(28,7,15) with 1404 blocks; empty at q=9",
            [](Checker& c) {
    const Field f = Field::make(3, 3);
    const Subspace w = Subspace::lucas(f, 7);
    c.eq(lambda_count(f, w, 7), std::uint64_t{15}, "stabilized count");
    c.eq((27 * 27 + ((-1) - 14) * 27 + 36) / 24, 15, "closed form, m=3");

    const BlockFamily fam = enumerate_blocks(f, w, 7, EnumMethod::orbit);
    c.eq(fam.blocks.size(), std::size_t{1404}, "block count");
    const DesignReport rep = verify_design(fam, 3);
    c.expect(rep.is_design, "full triple tally");
    c.eq(rep.lambda.value_or(0), std::uint64_t{15}, "lambda from tally");

    const Field f9 = Field::make(3, 2);
    c.expect(enumerate_blocks(f9, Subspace::lucas(f9, 7), 7,
                              EnumMethod::brute)
                 .blocks.empty(),
             "q=9 family empty");

    // Scale check one field up: the m=4 parameter, cross-checked inside
    // lambda2 against the stabilized scan over F_81.
    c.eq(lambda2(4), std::uint64_t{231}, "m=4 parameter");
  });

  criterion(4, "ternary code pipeline: A3=0, A5=2496 at m=3; A5=0 at m=2",
            [](Checker& c) {
    const auto [a3, a5] = melas_a3_a5(3);
    c.expect(a3 == 0, "A3 = 0");
    c.expect(a5 == 2496, "A5 = 2496");
    c.expect(BigInt(5) * a5 == BigInt(32) * 26 * lambda2(3),
             "5*A5 = 32*26*lambda");

    const auto [b3, b5] = melas_a3_a5(2);
    c.expect(b3 == 0 && b5 == 0, "m=2 has no light words");
  });

  criterion(5, "six-subset family: 9828 = 7*1404, a 3-(28,6,60) design",
            [](Checker& c) {
    const Field f = Field::make(3, 3);
    const CayleyCtx ctx = CayleyCtx::make(f);
    const auto six = six_subset_family(ctx);
    c.eq(six.size(), std::size_t{9828}, "family size");
    const BlockFamily deg7 =
        enumerate_blocks(f, Subspace::lucas(f, 7), 7, EnumMethod::orbit);
    c.expect(six.size() == 7 * deg7.blocks.size(), "factor-7 identity");
    c.eq(lambda1(3), std::uint64_t{60}, "lambda1");
    c.eq(4 * lambda2(3), std::uint64_t{60}, "lambda1 = 4*lambda2");

    BlockFamily fam;
    fam.v = f.q() + 1;
    fam.k = 6;
    for (const UnitBlock& t : six) fam.blocks.push_back(ctx.preimage(t));
    std::sort(fam.blocks.begin(), fam.blocks.end());
    const DesignReport rep = verify_design(fam, 3);
    c.expect(rep.is_design, "design verification");
    c.eq(rep.lambda.value_or(0), std::uint64_t{60}, "lambda from tally");
    c.expect(aux_e2_nonvanishing(ctx, 0), "pair-sum nonvanishing, q=27");
    c.expect(aux_e2_nonvanishing(CayleyCtx::make(Field::make(3, 2)), 0),
             "pair-sum nonvanishing, q=9");
  });

  criterion(6, "single-equation degrees: {5} for p=2, {2p-3,2p-2,3p-2} odd p",
            [](Checker& c) {
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      std::vector<std::uint64_t> got;
      for (std::uint64_t k = 3; k <= 4 * p; ++k)
        if (single_equation_classify(p, k)) got.push_back(k);
      const std::vector<std::uint64_t> want =
          p == 2 ? std::vector<std::uint64_t>{5}
                 : std::vector<std::uint64_t>{2 * p - 3, 2 * p - 2, 3 * p - 2};
      c.expect(got == want, "positive set at p=" + std::to_string(p));
    }
  });

  criterion(7, "line and circle enumerations agree at (16,5), (9,4), (27,7)",
            [](Checker& c) {
    for (auto [p, e, k] : {std::tuple<std::uint64_t, std::uint64_t,
                                      std::uint64_t>{2, 4, 5},
                           {3, 2, 4}, {3, 3, 7}}) {
      const Field f = Field::make(p, e);
      const auto rep = model_equivalence(f, Subspace::lucas(f, k), k);
      c.expect(rep.equal, "q=" + std::to_string(f.q()) + " equivalence");
      c.expect(rep.line_blocks == rep.circle_blocks, "counts agree");
    }
  });

  criterion(8, "code distances: d = q+1-k when nonempty, dual d <= k+2, MDS",
            [](Checker& c) {
    for (auto [p, e, k] : {std::tuple<std::uint64_t, std::uint64_t,
                                      std::uint64_t>{2, 4, 5},
                           {3, 2, 4}, {3, 3, 7}, {2, 3, 5}}) {
      const Field f = Field::make(p, e);
      const bool empty = (p == 2 && e == 3);
      const LinearCode code = code_from_subspace(f, Subspace::lucas(f, k));
      const std::uint64_t d = min_distance(code);
      if (empty) {
        c.expect(d > f.q() + 1 - k, "q=8 distance exceeds q+1-k");
        c.eq(d, std::uint64_t{6}, "q=8 distance");
      } else {
        c.eq(d, f.q() + 1 - k, "distance at q=" + std::to_string(f.q()));
      }

      // A dependency among dim+1 generator columns is a dual word of
      // weight <= dim+1 <= k+2.
      const std::uint64_t cols = code.dim() + 1;
      Matrix sub(code.dim(), Row(cols));
      for (std::uint64_t r = 0; r < code.dim(); ++r)
        for (std::uint64_t j = 0; j < cols; ++j) sub[r][j] = code.gen[r][j];
      const Matrix ker = kernel_basis(f, sub, cols);
      c.expect(!ker.empty(), "dependent columns exist");
      if (!ker.empty()) {
        Row word(code.n, 0);
        std::uint64_t weight = 0;
        for (std::uint64_t j = 0; j < cols; ++j) {
          word[j] = ker[0][j];
          if (word[j]) ++weight;
        }
        bool orthogonal = weight >= 1 && weight <= k + 2;
        for (const Row& g : code.gen)
          if (dot(f, g, word) != 0) orthogonal = false;
        c.expect(orthogonal, "dual word of weight <= k+2");
      }
    }

    // Full-space codes are MDS at every degree.
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{5, 1},
                        {7, 1}, {2, 3}, {3, 2}}) {
      const Field f = Field::make(p, e);
      const CodeCaps caps;
      for (std::uint64_t k = 1; k <= f.q(); ++k) {
        const LinearCode code = code_from_subspace(f, Subspace::full(f, k));
        // Enumerate whichever side is smaller; both routes are exact.
        const WeightStrategy strategy =
            scalar_classes(f.q(), code.dim()) <=
                    scalar_classes(f.q(), code.n - code.dim())
                ? WeightStrategy::direct
                : WeightStrategy::via_dual;
        const std::uint64_t d =
            dist_min_weight(weight_distribution(code, strategy, caps));
        c.eq(d, f.q() - k + 1, "MDS at q=" + std::to_string(f.q()) +
                                   ", k=" + std::to_string(k));
      }
    }
  });

  criterion(9, "property suites: invariance, circle identity, equivariance",
            [](Checker& c) {
    // Lucas subspaces are fixed by 200 sampled group elements, for every
    // prime power q <= 81 and every degree k <= 31.
    for (auto [p, e] : kPrimePowers81) {
      const Field f = Field::make(p, e);
      for (std::uint64_t k = 3; k <= 31; ++k) {
        const auto res = check_gl2_invariance(f, Subspace::lucas(f, k), 200,
                                              kDefaultSeed);
        if (!res.invariant) {
          c.expect(false, "invariance failed at q=" + std::to_string(f.q()) +
                              ", k=" + std::to_string(k));
          return;
        }
      }
    }

    // e_{k-a}(T) = e_k(T) e_a(T)^q on 10^4 random unit blocks.
    std::mt19937_64 rng(kDefaultSeed);
    std::uint64_t blocks_checked = 0;
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{3, 2},
                        {2, 4}, {5, 2}, {3, 3}}) {
      const CayleyCtx ctx = CayleyCtx::make(Field::make(p, e));
      const ExtField& ext = ctx.ext();
      const auto& circle = ctx.circle();
      for (int trial = 0; trial < 2500; ++trial) {
        const std::uint64_t k = 3 + rng() % 5;
        std::vector<Code> t;
        while (t.size() < k) {
          const Code u = circle[rng() % circle.size()];
          bool dup = false;
          for (Code v : t) dup |= (v == u);
          if (!dup) t.push_back(u);
        }
        const auto es = elem_sym_all(ext, t);
        for (std::uint64_t a = 0; a <= k; ++a)
          if (es[k - a] != ext.mul(es[k], ext.frobenius_q(es[a]))) {
            c.expect(false, "circle identity failed");
            return;
          }
        ++blocks_checked;
      }
    }
    c.eq(blocks_checked, std::uint64_t{10000}, "unit blocks sampled");

    // Zero sets transform with the group: Z(g.f_S) = g(S).
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{7, 1},
                        {3, 2}, {2, 4}}) {
      const Field f = Field::make(p, e);
      const auto pts = all_points(f);
      const auto group = pgl2_all(f);
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint64_t> idx;
        const std::uint64_t k = 3 + rng() % 3;
        while (idx.size() < k) {
          const std::uint64_t i = rng() % pts.size();
          bool dup = false;
          for (auto j : idx) dup |= (j == i);
          if (!dup) idx.push_back(i);
        }
        Block s;
        for (auto i : idx) s.push_back(pts[i]);
        std::sort(s.begin(), s.end());
        const Pgl2 g = group[rng() % group.size()];
        const HomPoly moved =
            gl2_act_poly(f, Mat2{g.a, g.b, g.c, g.d}, f_s(f, s));
        Block image;
        for (const auto& pt : s) image.push_back(pgl2_act(f, g, pt));
        std::sort(image.begin(), image.end());
        const auto ev = ev_vector(f, moved);
        for (std::uint64_t i = 0; i <= f.q(); ++i) {
          const bool in_image = std::binary_search(
              image.begin(), image.end(), ProjPoint::from_index(i, f.q()));
          if ((ev[i] == 0) != in_image) {
            c.expect(false, "zero-set equivariance failed");
            return;
          }
        }
      }
    }
  });

  criterion(10, "brute-force and orbit enumerations coincide up to q=16",
            [](Checker& c) {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{2, 1},
                        {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                        {11, 1}, {13, 1}, {2, 4}}) {
      const Field f = Field::make(p, e);
      for (std::uint64_t k = 3; k <= f.q() + 1; ++k) {
        if (binom64(f.q() + 1, k) > 10'000'000) continue;
        const Subspace w = Subspace::lucas(f, k);
        const BlockFamily brute = enumerate_blocks(f, w, k, EnumMethod::brute);
        const BlockFamily orbit = enumerate_blocks(f, w, k, EnumMethod::orbit);
        if (brute.blocks != orbit.blocks) {
          c.expect(false, "mismatch at q=" + std::to_string(f.q()) +
                              ", k=" + std::to_string(k));
          return;
        }
      }
    }
  });

  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) +
                                      " criterion(s) failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
