#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "nilcover/bigint.hpp"

namespace nilcover {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& a);

/// A finitely generated abelian group Z/d_1 + ... + Z/d_r + Z^free_rank with
/// d_1 | d_2 | ... | d_r and every d_i >= 2.
struct AbelianInvariants {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  /// Text form, e.g. "torsion [2,4] free_rank 1".
  std::string str() const;

  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
};

/// Invariants of a diagonal (not necessarily divisibility-ordered) list,
/// where zeros are free factors and units vanish.
AbelianInvariants invariants_from_diagonal(const std::vector<Int>& diagonal,
                                           std::size_t extra_free);

struct SmithForm {
  IntMatrix diagonal;         // D = U * A * V
  IntMatrix row_transform;    // U, unimodular
  IntMatrix col_transform;    // V, unimodular
  AbelianInvariants cokernel;  // Z^cols / (row space of A)
};

/// Smith normal form with pivots of least absolute value and Euclidean
/// elimination. Rows of A are relations on Z^cols.
SmithForm smith_normal_form(const IntMatrix& a);

/// Row Hermite normal form: echelon rows, positive pivots, entries above each
/// pivot reduced into [0, pivot). Zero rows are kept at the bottom.
IntMatrix hermite_reduce(const IntMatrix& a);

}  // namespace nilcover
