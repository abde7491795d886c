#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgldes/gf.hpp"
#include "pgldes/linalg.hpp"

namespace pgldes {

/// Homogeneous polynomial of degree k in X, Y: coef[i] multiplies
/// X^{k-i} Y^i, so coef has length k+1 and coef[0] is the X^k coefficient.
struct HomPoly {
  std::vector<Code> coef;
  std::uint64_t degree() const { return coef.size() - 1; }
  bool is_zero() const {
    for (Code c : coef)
      if (c) return false;
    return true;
  }
  auto operator<=>(const HomPoly&) const = default;
};

// An unscaled invertible 2x2 matrix; unlike Pgl2 this carries the actual
// entries, since the polynomial action distinguishes scalar multiples.
struct Mat2 {
  Code a = 1, b = 0, c = 0, d = 1;
};

// f(x, 1) for finite points, the X^k coefficient at infinity.
Code evaluate(const Field& f, const HomPoly& poly, Code x);
Code evaluate_at_infinity(const HomPoly& poly);

// Evaluation vector of length q+1: finite points by code, infinity last.
std::vector<Code> ev_vector(const Field& f, const HomPoly& poly);

// The substitution action (g.f)(X, Y) = f(dX - bY, -cX + aY).
HomPoly gl2_act_poly(const Field& f, const Mat2& g, const HomPoly& poly);

// Convolution product of homogeneous polynomials (degrees add).
HomPoly poly_mul(const Field& f, const HomPoly& u, const HomPoly& v);
// (sX + tY)^n expanded via binomial coefficients mod p.
HomPoly linear_power(const Field& f, Code s, Code t, std::uint64_t n);

// Digit-domination order: i <=_p k iff every base-p digit of i is at most
// the corresponding digit of k (equivalently, binom(k, i) != 0 mod p).
bool leq_p(std::uint64_t i, std::uint64_t k, std::uint64_t p);

// {a in [0, k] : not (a <=_p k)}, ascending.
std::vector<std::uint64_t> forbidden_set(std::uint64_t k, std::uint64_t p);

// True when the base-p addition of all summands produces no carries, i.e.
// digit sums stay below p.
bool carry_free(const std::vector<std::uint64_t>& summands, std::uint64_t p);

// binom(n, m) mod p via Lucas digit products.
std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t m, std::uint64_t p);

/// A subspace of the degree-k homogeneous polynomials, kept as an RREF
/// basis.  Row vectors are coefficient vectors of length k+1.
class Subspace {
 public:
  static Subspace from_rows(const Field& f, std::uint64_t k, Matrix rows);
  // Span of the monomials X^{k-i} Y^i with i <=_p k.
  static Subspace lucas(const Field& f, std::uint64_t k);
  static Subspace full(const Field& f, std::uint64_t k);

  std::uint64_t degree() const { return k_; }
  std::uint64_t dim() const { return rows_.size(); }
  const Matrix& rows() const { return rows_; }

  bool contains(const Field& f, const HomPoly& poly) const;

  // Rows spanning the annihilator under the coefficient dot product:
  // poly lies in the subspace iff every returned row is orthogonal to its
  // coefficient vector.  Useful for tight membership loops.
  Matrix annihilator(const Field& f) const;

 private:
  std::uint64_t k_ = 0;
  Matrix rows_;
};

struct InvarianceResult {
  bool invariant = true;
  std::optional<Mat2> witness_g;
  std::optional<HomPoly> witness_row;
  std::uint64_t seed = 0;
  explicit operator bool() const { return invariant; }
};

// Checks g.W = W for `trials` pseudo-random invertible matrices drawn from
// a deterministic stream, or for every group element when exhaustive is
// set.  On failure the offending matrix and basis row are reported.
InvarianceResult check_gl2_invariance(const Field& f, const Subspace& w,
                                      std::uint64_t trials,
                                      std::uint64_t seed,
                                      bool exhaustive = false);

// Dimension of the kernel of the evaluation map on degree-k forms
// (0 for k <= q, k - q afterwards; computed by rank, not by formula).
std::uint64_t kernel_dimension(const Field& f, std::uint64_t k);

}  // namespace pgldes
