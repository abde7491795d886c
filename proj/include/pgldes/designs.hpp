#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgldes/polyspace.hpp"
#include "pgldes/projline.hpp"
#include "pgldes/util.hpp"

namespace pgldes {

// A block is a sorted set of projective-line points.
using Block = std::vector<ProjPoint>;

enum class Provenance { brute, orbit, constructed };

const char* to_string(Provenance p);

struct BlockFamily {
  std::uint64_t v = 0;  // point count, q + 1
  std::uint64_t k = 0;  // block size
  std::vector<Block> blocks;  // each sorted; list sorted and deduplicated
  Provenance provenance = Provenance::constructed;
};

struct DesignReport {
  std::uint64_t t = 0, v = 0, k = 0, b = 0;
  std::optional<std::uint64_t> lambda;  // set iff is_design
  bool is_design = false;
  bool steiner = false;
};

struct EnumOptions {
  std::uint64_t subset_cap = 10'000'000;   // max subsets a scan may visit
  std::uint64_t block_cap = 10'000'000;    // max blocks a family may hold
  unsigned workers = 1;                    // results independent of this
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t invariance_trials = 32;
  bool validate_invariance = true;
};

enum class EnumMethod { brute, orbit };

// Product of the linear forms of a point set: (X - tY) per finite point t,
// Y for infinity.  Throws on duplicate points.
HomPoly f_s(const Field& f, const Block& s);

// Whether the form of S lies in W; |S| must equal the degree of W.
bool block_membership(const Field& f, const Subspace& w, const Block& s);

// Number of blocks of the family of W through the fixed triple
// {inf, 0, 1}.  Equals the design lambda when W is GL2-invariant and the
// family is nonempty.
std::uint64_t lambda_count(const Field& f, const Subspace& w, std::uint64_t k,
                           const EnumOptions& opts = {});

// The blocks through {inf, 0, 1}, in colex order of the added points.
std::vector<Block> stabilized_blocks(const Field& f, const Subspace& w,
                                     std::uint64_t k,
                                     const EnumOptions& opts = {});

// The full family {S : f_S in W}.  `brute` scans all k-subsets; `orbit`
// expands the stabilized blocks under the full group (requires a
// GL2-invariant W, which is validated on a sample of group elements).
BlockFamily enumerate_blocks(const Field& f, const Subspace& w,
                             std::uint64_t k, EnumMethod method,
                             const EnumOptions& opts = {});

// Full tally of all t-subsets; is_design iff the family is nonempty and
// every t-subset is covered equally often.
DesignReport verify_design(const BlockFamily& fam, std::uint64_t t);

BlockFamily complement_family(const BlockFamily& fam);

// The d-th roots of unity as a block (d | q-1), optionally with infinity
// appended (then p must not divide d+1).  Membership of the block in the
// matching Lucas family is asserted.
Block basic_block_subgroup(const Field& f, std::uint64_t d,
                           bool with_infinity);

// The subfield F_{p^m} plus infinity (m | e); membership in the Lucas
// family of degree p^m + 1 is asserted.
Block basic_block_subfield(const Field& f, std::uint64_t m);

// Union of pairwise disjoint Lucas-family blocks whose sizes add without
// base-p carries; the union is itself a Lucas-family block (asserted).
Block union_carry_free(const Field& f, const std::vector<Block>& parts);

enum class EmptinessStatus { empty_p_divides, nonempty_witness, exhausted_empty };

const char* to_string(EmptinessStatus s);

struct EmptinessReport {
  EmptinessStatus status = EmptinessStatus::exhausted_empty;
  std::optional<Block> witness;
  std::string how;  // which construction produced the witness
};

// Decides emptiness of the degree-k Lucas family: a characteristic-divides
// shortcut, then explicit constructions (subgroup, subfield, carry-free
// unions of two basic blocks), then the stabilized scan as a last resort.
EmptinessReport emptiness_oracle(const Field& f, std::uint64_t k,
                                 const EnumOptions& opts = {});

struct SteinerReport {
  bool applicable = false;  // m | e
  std::uint64_t q0 = 0;
  DesignReport design;
  BlockFamily family;
  std::uint64_t expected_blocks = 0;
  bool count_matches = false;
};

// Blocks of size p^m + 1: a Steiner system S(3, q0+1, q+1) with
// q(q^2-1)/(q0(q0^2-1)) blocks when m | e, empty otherwise.
SteinerReport steiner_q0_report(const Field& f, std::uint64_t m,
                                const EnumOptions& opts = {});

}  // namespace pgldes
