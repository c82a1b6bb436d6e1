#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gcw {

// Exact sparse matrix over Q, stored by columns. Zero entries are never stored.
class RationalSparseMatrix {
public:
    using Column = std::map<std::size_t, mpq_class>;

    RationalSparseMatrix() = default;
    RationalSparseMatrix(std::size_t rows, std::size_t cols);

    static RationalSparseMatrix identity(std::size_t n);
    static RationalSparseMatrix from_dense(const std::vector<std::vector<mpq_class>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;

    mpq_class get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const mpq_class& value);
    void add(std::size_t r, std::size_t c, const mpq_class& value);

    const Column& column(std::size_t c) const { return columns_[c]; }
    Column& mutable_column(std::size_t c) { return columns_[c]; }
    bool is_zero() const { return nnz() == 0; }

    RationalSparseMatrix transpose() const;
    RationalSparseMatrix permuted(const std::vector<std::size_t>& row_perm,
                                  const std::vector<std::size_t>& col_perm) const;
    std::vector<std::vector<mpq_class>> to_dense() const;

    // Row-major list of (row, col, value) triples.
    std::vector<std::tuple<std::size_t, std::size_t, mpq_class>> entries() const;

    bool operator==(const RationalSparseMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Column> columns_;
};

// Throws std::invalid_argument when a.cols() != b.rows().
RationalSparseMatrix multiply(const RationalSparseMatrix& a, const RationalSparseMatrix& b);
RationalSparseMatrix subtract(const RationalSparseMatrix& a, const RationalSparseMatrix& b);

// "num/den" with den > 0, always including the denominator.
std::string format_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

// Header "%%matrix rational <rows> <cols> <nnz>", then "row col num/den"
// lines, 1-based, row-major.
void write_matrix_market(std::ostream& out, const RationalSparseMatrix& m);
RationalSparseMatrix read_matrix_market(std::istream& in);

} // namespace gcw
