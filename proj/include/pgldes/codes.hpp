#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgldes/designs.hpp"
#include "pgldes/gf.hpp"
#include "pgldes/linalg.hpp"
#include "pgldes/polyspace.hpp"

namespace pgldes {

// Weight counts overflow 64 bits quickly (3^72 words already for the
// length-80 constraint code), so distributions carry exact big integers.
using BigInt = boost::multiprecision::cpp_int;

struct LinearCode {
  Field field;
  std::uint64_t n = 0;
  Matrix gen;  // RREF generator matrix; rows independent
  std::uint64_t dim() const { return gen.size(); }
  bool operator==(const LinearCode& o) const {
    return field == o.field && n == o.n && gen == o.gen;
  }
};

struct CodeCaps {
  std::uint64_t word_cap = 100'000'000;  // projective classes per scan
  unsigned workers = 1;                  // results independent of this
};

// Generic constructor: validates entries, row-reduces, drops dependents.
LinearCode make_code(const Field& f, std::uint64_t n, Matrix rows);

// Evaluation code of a nonzero subspace of degree-k forms, k <= q: one
// coordinate per projective point (finite by code, infinity last).  The
// evaluation map is injective in this range, so dim equals dim W.
LinearCode code_from_subspace(const Field& f, const Subspace& w);

// Exact minimum weight by exhausting one representative per scalar class
// of nonzero codewords.  No shortcuts: the scan always completes, so the
// result is a certificate in both directions.
std::uint64_t min_distance(const LinearCode& c, const CodeCaps& caps = {});

LinearCode dual(const LinearCode& c);

struct WeightDist {
  std::uint64_t n = 0;
  std::uint64_t dim = 0;
  std::vector<BigInt> counts;  // A_0 .. A_n
};

enum class WeightStrategy { direct, via_dual };

// direct: enumerate this code's scalar classes.  via_dual: enumerate the
// dual's and convert through the transform below.  Both check A_0 = 1 and
// sum = q^dim before returning.
WeightDist weight_distribution(const LinearCode& c, WeightStrategy strategy,
                               const CodeCaps& caps = {});

// Distribution of the dual of a code with distribution `w`, by the q-ary
// transform with Krawtchouk coefficients; all arithmetic exact, and the
// final division by q^dim must leave no remainder.
WeightDist macwilliams_dual_distribution(const Field& f, const WeightDist& w);

struct SupportDesignReport {
  std::uint64_t w = 0;        // codeword weight collected
  BlockFamily family;         // distinct supports, as line point sets
  DesignReport design;
};

// Supports of all weight-w codewords of a length-(q+1) code, verified as a
// t-design.  Requires w >= 3 (below that no 3-subset is covered) and the
// projective-line coordinate layout.
SupportDesignReport support_design(const LinearCode& c, std::uint64_t w,
                                   std::uint64_t t = 3,
                                   const CodeCaps& caps = {});

// Design of the minimum-weight supports of the evaluation code of W: the
// complements of the blocks of W's family.  Computed design-side and, when
// the codeword scan fits the cap, cross-checked against the actual
// weight-(q+1-k) supports; disagreement throws.
DesignReport min_weight_support_design(const Field& f, const Subspace& w,
                                       std::uint64_t k,
                                       const EnumOptions& opts = {},
                                       const CodeCaps& caps = {});

// The coordinate form of the substitution action: permutes evaluation
// points and scales each coordinate by the k-th power of the denominator.
// Applying it to a codeword of an invariant subspace's code lands in the
// code again; at k = q-1 every scale factor is 1.
Row monomial_action_word(const Field& f, const Mat2& g, std::uint64_t k,
                         const Row& word);

// --- the ternary constraint-pair pipeline -------------------------------

// Length 3^m - 1 code over F_3 cut out by sum c_x x = 0 and
// sum c_x x^{-1} = 0 (constraints over F_{3^m}, expanded to 2m ternary
// parity rows through the polynomial basis).  Dimension 3^m - 1 - 2m,
// rank-verified; sampled codewords are re-checked against the two
// constraints in big-field arithmetic.
LinearCode melas_code(std::uint64_t m);

// (A_3, A_5) of the code above, from the full weight distribution: the
// q^2 dual words (Tr(ax + bx^{-1}))_x are enumerated, proven to be exactly
// the dual, tallied, and transformed.  A_3 = 0 and the closed form for A_5
// are asserted against the enumeration.
std::pair<BigInt, BigInt> melas_a3_a5(std::uint64_t m,
                                      const CodeCaps& caps = {});

// lambda of the triple design of the degree-7 Lucas family over F_{3^m},
// computed two ways (5 A_5 / (32(q-1)) and the quadratic closed form) with
// exact-divisibility asserts, and cross-checked against the stabilized
// line-model count whenever that scan fits the subset cap.
std::uint64_t lambda2(std::uint64_t m, const EnumOptions& opts = {},
                      const CodeCaps& caps = {});

// 4 * lambda2: the parameter of the companion 6-subset design.  When the
// circle-side scans fit the caps, cross-checked against the six-subset
// family size (factor-7 identity and the design-count identity).
std::uint64_t lambda1(std::uint64_t m, const EnumOptions& opts = {},
                      const CodeCaps& caps = {});

struct MelasReport {
  std::uint64_t m = 0, q = 0;
  BigInt a3, a5;
  std::uint64_t lam2 = 0, lam1 = 0;
  bool oracle_agreement = false;
  WeightDist dist;  // full distribution of the constraint-pair code
};

// The whole pipeline in one call (CLI front end).
MelasReport melas_report(std::uint64_t m, const EnumOptions& opts = {},
                         const CodeCaps& caps = {});

}  // namespace pgldes
