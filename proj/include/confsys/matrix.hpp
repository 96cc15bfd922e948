#pragma once

#include "confsys/bigint.hpp"
#include "confsys/errors.hpp"

#include <vector>

namespace confsys {

/// Dense matrix with exact arbitrary-precision integer entries. All rank and
/// lattice computations in the toolkit go through this type; no floating
/// point is used anywhere in the exact paths.
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    BigInt& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination.
    int rank() const;

    /// Copy with the columns listed in `del` removed (indices 0-based, sorted or not).
    IntegerMatrix delete_columns(const std::vector<int>& del) const;

    /// Copy with one extra row appended.
    IntegerMatrix stack_row(const std::vector<BigInt>& row) const;

    std::vector<BigInt> row(int r) const;

    bool operator==(const IntegerMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigInt> a_;
};

/// Basis of the integer kernel lattice {v : M v = 0}, one basis vector per row,
/// reduced to row-style Hermite normal form (positive pivots, entries above a
/// pivot reduced into [0, pivot)). The normal form is unique, so equal lattices
/// give byte-equal bases.
IntegerMatrix integer_kernel_basis(const IntegerMatrix& m);

/// Row-style HNF of the lattice spanned by the rows (zero rows dropped).
IntegerMatrix hermite_row_basis(const IntegerMatrix& rows);

/// Membership of v in the row lattice of an HNF basis.
bool lattice_contains(const IntegerMatrix& hnf_basis, const std::vector<BigInt>& v);

} // namespace confsys
