#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pgldes/designs.hpp"
#include "pgldes/gf.hpp"
#include "pgldes/linalg.hpp"
#include "pgldes/polyspace.hpp"

namespace pgldes {

// A sorted list of distinct elements of U_{q+1}, by canonical code.
using UnitBlock = std::vector<Code>;

/// The unit-circle model.  kappa(x) = (x - xi)/(x - xi^q) maps the
/// projective line bijectively onto U_{q+1}, sending infinity to 1.
/// xi is pinned deterministically: for odd characteristic the square root
/// (smaller code of the two) of the smallest non-square of F_q; for p = 2
/// the smallest solution of x^q + x = 1.  Both give xi outside F_q with
/// the conjugate relation the transform needs.
class CayleyCtx {
 public:
  static CayleyCtx make(const Field& f);

  const Field& base() const { return base_; }
  const ExtField& ext() const { return ext_; }
  Code xi() const { return xi_; }
  Code xi_conj() const { return xi_q_; }

  Code kappa(const ProjPoint& pt) const;
  ProjPoint kappa_inv(Code u) const;  // throws if u is not a kappa value
  UnitBlock image(const Block& b) const;
  Block preimage(const UnitBlock& t) const;
  const std::vector<Code>& circle() const { return ext_.unit_circle(); }

 private:
  Field base_;
  ExtField ext_;
  Code xi_ = 0, xi_q_ = 0;
  std::vector<Code> tab_;                        // point index -> circle code
  std::unordered_map<Code, std::uint64_t> inv_;  // circle code -> point index
};

// e_a of a list of extension-field elements; elem_sym_all returns the whole
// vector (e_0, ..., e_n) from one incremental product pass.
std::vector<Code> elem_sym_all(const ExtField& ext, const std::vector<Code>& t);
Code elementary_symmetric(const ExtField& ext, const std::vector<Code>& t,
                          std::uint64_t a);

// The inadmissible indices of degree k in characteristic p, folded by the
// symmetry a <-> k-a that holds on the unit circle: one representative per
// orbit, restricted to 1 <= a <= k/2.  Sorted.
std::vector<std::uint64_t> reduced_conditions(std::uint64_t k, std::uint64_t p);

// Whether a k-subset of the circle is a block of the Lucas family in the
// unit-circle model: e_a(T) = 0 for every reduced inadmissible index a.
bool unit_block_test_lucas(const CayleyCtx& ctx, const UnitBlock& t,
                           std::uint64_t k);

// Whether the inadmissible set of (k, p) is a single {a, k-a} orbit, i.e.
// the model needs exactly one symmetric-function equation.  Computed
// directly from the folded index set and checked against the closed form
// (p = 2: k = 5; p odd: k in {2p-3, 2p-2, 3p-2}); disagreement throws.
bool single_equation_classify(std::uint64_t p, std::uint64_t k);

// The scalar extension of W to F_{q^2}, pushed through the coordinate
// change of the transform; rows are RREF over the extension field.
// transformed_conditions is its annihilator: the coefficient rows lambda
// for which T is a model block iff
//   sum_a (-1)^a lambda[a] e_a(T) = 0   for every row.
Matrix transformed_subspace(const CayleyCtx& ctx, const Subspace& w);
Matrix transformed_conditions(const CayleyCtx& ctx, const Subspace& w);

// All k-subsets T of U_{q+1} satisfying every alternating-sign condition
// row (each of length k+1, entries extension-field codes).  Blocks sorted,
// list in lexicographic order.
std::vector<UnitBlock> blocks_from_linear_conditions(
    const CayleyCtx& ctx, std::uint64_t k,
    const std::vector<std::vector<Code>>& rows, const EnumOptions& opts = {});

struct ModelEquivalence {
  bool equal = false;
  std::uint64_t line_blocks = 0;   // |B_W|, enumerated on the line
  std::uint64_t circle_blocks = 0; // |B~_W|, enumerated on the circle
  std::optional<UnitBlock> mismatch;  // a block found on one side only
};

// Verifies both inclusions of kappa(B_W) = B~_W: every line block maps to
// a block of the transformed subspace, and the independent circle-side
// enumeration produces exactly the same set.  For the Lucas subspace the
// circle blocks are additionally tested against the reduced e_a conditions.
ModelEquivalence model_equivalence(const Field& f, const Subspace& w,
                                   std::uint64_t k,
                                   const EnumOptions& opts = {});

// Characteristic 3 only: e_2(y_1,...,y_5,1,1) != 0 for distinct y_i in
// U_{q+1} \ {1}.  trials = 0 checks every 5-subset; otherwise that many
// seeded random ones.  Returns false (with no throw) on a counterexample.
bool aux_e2_nonvanishing(const CayleyCtx& ctx, std::uint64_t trials = 0,
                         std::uint64_t seed = kDefaultSeed);

// Characteristic 3 only: all 6-subsets A of U_{q+1} with
// e_4(A)e_2(A) = e_5(A)e_1(A).  Each member is cross-checked against the
// deletion correspondence with the degree-7 circle blocks: e_1(A) != 0,
// x = -e_2(A)/e_1(A) lies on the circle outside A, and A + {x} satisfies
// e_2 = 0.  A failed cross-check throws.
std::vector<UnitBlock> six_subset_family(const CayleyCtx& ctx,
                                         const EnumOptions& opts = {});

}  // namespace pgldes
