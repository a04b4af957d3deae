#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wonder/errors.hpp"

namespace wonder {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Sparse integer row: (column, coefficient) pairs, sorted by column.
using SparseRow = std::vector<std::pair<std::uint32_t, long long>>;

/// Exact rank of the span of the rows.  Elimination is fraction-free
/// (cross-multiplied integer rows divided by their content); it runs on
/// 64-bit words guarded by overflow checks and falls back to arbitrary
/// precision for the rare row that outgrows them.
std::size_t sparse_rank(std::vector<SparseRow> rows, std::uint32_t ncols);

/// Reduced row echelon form over the rationals: unit pivots, pivot columns
/// cleared everywhere else.  Rows are sorted by pivot column.
struct Rref {
    std::uint32_t ncols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, BigRational>>> rows;
    std::vector<std::uint32_t> pivot_cols; // sorted; parallel to rows
    std::vector<std::uint32_t> free_cols;  // complement, sorted

    std::size_t rank() const { return rows.size(); }

    /// v minus its projection onto the row space; the canonical coset
    /// representative supported on the free columns.
    std::vector<std::pair<std::uint32_t, BigRational>>
    reduce(std::vector<std::pair<std::uint32_t, BigRational>> v) const;
};

Rref rref_of(const std::vector<SparseRow>& rows, std::uint32_t ncols);

} // namespace wonder
