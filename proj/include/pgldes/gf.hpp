#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pgldes {

// Canonical element code.  For F_{p^e} the codes are 0..q-1 and the base-p
// digits of a code are the coordinates of the element with respect to the
// polynomial basis {1, alpha, ..., alpha^{e-1}}, alpha a root of the modulus.
// Codes 0..p-1 therefore are exactly the prime subfield.
using Code = std::uint64_t;

/// Finite field F_{p^e}.  Immutable after construction; copies share state
/// and are cheap, so contexts can be passed around freely (also between
/// threads).  All arithmetic works on canonical codes.
///
/// The modulus is stored constant-term-first, monic (length e+1).  When no
/// modulus is supplied the lexicographically smallest monic irreducible
/// polynomial is chosen, comparing coefficient tuples (c0, c1, ..., c_{e-1})
/// entry by entry starting from the constant term.  This makes field
/// construction fully deterministic: same (p, e) in, same field out.
class Field {
 public:
  Field() = default;  // invalid placeholder; use make()/parse()

  static Field make(std::uint64_t p, std::uint64_t e);
  static Field make(std::uint64_t p, std::uint64_t e,
                    const std::vector<Code>& modulus);

  // Accepts "p^e" or "p^e:c0,c1,...,1" (explicit modulus, constant first).
  static Field parse(std::string_view spec);

  bool valid() const { return impl_ != nullptr; }

  std::uint64_t p() const;
  std::uint64_t e() const;
  std::uint64_t q() const;
  std::uint64_t size() const { return q(); }
  const std::vector<Code>& modulus() const;

  // Canonical spec string; includes the modulus whenever e > 1.
  std::string spec_string() const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;          // throws on a == 0
  Code div(Code a, Code b) const;  // throws on b == 0
  // Integer exponents, negative allowed for nonzero base; 0^0 = 1.
  Code pow(Code a, long long n) const;
  // a^(p^j); j may be any non-negative integer (period e).
  Code frobenius(Code a, std::uint64_t j) const;

  // Embedding of a small integer via reduction into the prime subfield.
  Code from_int(std::uint64_t n) const { return n % p(); }

  // Base-p digit vector (length e, least significant first) and back.
  std::vector<std::uint64_t> digits(Code a) const;
  Code from_digits(const std::vector<std::uint64_t>& d) const;

  // Smallest generator of the multiplicative group, by canonical code.
  Code generator() const;

  bool is_square(Code a) const;  // odd characteristic only

  // The subgroup {x : x^d = 1} of order d; requires d | q-1.  Sorted.
  std::vector<Code> mult_subgroup(std::uint64_t d) const;

  // Elements of the subfield F_{p^m} (fixed points of x -> x^{p^m});
  // requires m | e.  Sorted.
  std::vector<Code> subfield(std::uint64_t m) const;

  bool operator==(const Field& o) const;

  struct Impl;  // definition is internal to the implementation file

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Quadratic extension F_{q^2} of a base field F_q, as pairs a + b*beta with
/// beta a root of the chosen quadratic.  Element codes are a + b*q with
/// a, b base-field codes.  The defining quadratic is the lexicographically
/// smallest monic irreducible X^2 + c1*X + c0 over F_q (same constant-first
/// comparison as Field, applied to canonical codes), so construction is
/// deterministic.
class ExtField {
 public:
  ExtField() = default;
  explicit ExtField(const Field& base);

  bool valid() const { return impl_ != nullptr; }
  const Field& base() const;
  std::uint64_t size() const;  // q^2
  // {c0, c1, 1} as base-field codes.
  const std::array<Code, 3>& ext_modulus() const;

  std::pair<Code, Code> parts(Code z) const;
  Code from_parts(Code a, Code b) const;
  Code embed(Code a) const { return a; }  // base codes are the b == 0 codes
  bool in_base(Code z) const;

  Code add(Code x, Code y) const;
  Code sub(Code x, Code y) const;
  Code neg(Code x) const;
  Code mul(Code x, Code y) const;
  Code inv(Code x) const;
  Code div(Code x, Code y) const;
  Code pow(Code x, long long n) const;

  // z^q: the conjugate over the base field (an involution fixing F_q).
  Code frobenius_q(Code z) const;
  // z * z^q, always a base-field element; returned as a base-field code.
  Code norm_to_base(Code z) const;

  // All q+1 solutions of u^{q+1} = 1, sorted by canonical code.
  const std::vector<Code>& unit_circle() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace pgldes
