#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "gcw/rational_matrix.hpp"

namespace gcw {

struct EliminationResult {
    std::size_t rank = 0;
    std::size_t kernel_dim = 0;
    // Sorted ascending.
    std::vector<std::size_t> pivot_columns;
};

// Exact rank over Q. Rows are cleared of denominators, then eliminated
// fraction-free (Bareiss) with Markowitz pivot selection: lowest
// (r-1)(c-1) fill cost, ties broken by smallest (row, col).
EliminationResult rank_nullity(const RationalSparseMatrix& m);

// True iff a_out * a_in == 0. Throws std::invalid_argument when the product
// is not defined.
bool image_in_kernel(const RationalSparseMatrix& a_in, const RationalSparseMatrix& a_out);

// Basis of the null space {x : m x = 0}, one dense vector per free column of
// the reduced row echelon form.
std::vector<std::vector<mpq_class>> kernel_basis(const RationalSparseMatrix& m);

// Matrix whose columns are the given vectors.
RationalSparseMatrix columns_to_matrix(std::size_t rows, const std::vector<std::vector<mpq_class>>& columns);

// [a | b], both with the same row count.
RationalSparseMatrix hconcat(const RationalSparseMatrix& a, const RationalSparseMatrix& b);

} // namespace gcw
