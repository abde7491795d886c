#pragma once

// Row-reduction helpers shared by the polynomial-space, design and code
// layers.  Everything is templated on the field context so the same code
// runs over F_q and over its quadratic extension.

#include <concepts>
#include <cstdint>
#include <vector>

#include "pgldes/gf.hpp"

namespace pgldes {

template <class F>
concept FieldLike = requires(const F f, Code a, Code b) {
  { f.size() } -> std::convertible_to<std::uint64_t>;
  { f.add(a, b) } -> std::convertible_to<Code>;
  { f.sub(a, b) } -> std::convertible_to<Code>;
  { f.neg(a) } -> std::convertible_to<Code>;
  { f.mul(a, b) } -> std::convertible_to<Code>;
  { f.inv(a) } -> std::convertible_to<Code>;
};

using Row = std::vector<Code>;
using Matrix = std::vector<Row>;

// In-place reduced row echelon form; zero rows are dropped, pivots ascend.
template <FieldLike F>
void rref_in_place(const F& f, Matrix& rows) {
  if (rows.empty()) return;
  const std::size_t ncols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Code s = f.inv(rows[rank][col]);
    if (s != 1)
      for (auto& c : rows[rank]) c = f.mul(c, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Code t = rows[r][col];
      if (t == 0) continue;
      for (std::size_t j = col; j < ncols; ++j)
        rows[r][j] = f.sub(rows[r][j], f.mul(t, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
}

// Reduce `vec` against RREF rows; true iff it lands on zero (i.e. vec lies
// in the row space).
template <FieldLike F>
bool reduces_to_zero(const F& f, const Matrix& rref, Row vec) {
  for (const auto& row : rref) {
    std::size_t piv = 0;
    while (piv < row.size() && row[piv] == 0) ++piv;
    if (piv == row.size()) continue;
    const Code c = vec[piv];
    if (c == 0) continue;
    for (std::size_t j = piv; j < vec.size(); ++j)
      vec[j] = f.sub(vec[j], f.mul(c, row[j]));
  }
  for (Code c : vec)
    if (c != 0) return false;
  return true;
}

// Basis of the right kernel {v : rows * v = 0}, as RREF-style rows of
// length ncols.  For an empty matrix this is the full standard basis.
template <FieldLike F>
Matrix kernel_basis(const F& f, Matrix rows, std::size_t ncols) {
  for (const auto& r : rows)
    if (r.size() != ncols) throw std::invalid_argument("kernel: ragged matrix");
  rref_in_place(f, rows);
  std::vector<std::size_t> pivot_of_col(ncols, SIZE_MAX);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t piv = 0;
    while (rows[r][piv] == 0) ++piv;
    pivot_of_col[piv] = r;
  }
  Matrix out;
  for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
    if (pivot_of_col[free_col] != SIZE_MAX) continue;
    Row v(ncols, 0);
    v[free_col] = 1;
    for (std::size_t col = 0; col < free_col; ++col) {
      const std::size_t r = pivot_of_col[col];
      if (r != SIZE_MAX) v[col] = f.neg(rows[r][free_col]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <FieldLike F>
std::size_t matrix_rank(const F& f, Matrix rows) {
  rref_in_place(f, rows);
  return rows.size();
}

// Dot product of equal-length rows.
template <FieldLike F>
Code dot(const F& f, const Row& a, const Row& b) {
  Code acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace pgldes
