#include "gcw/rational_matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gcw {

RationalSparseMatrix::RationalSparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols)
{
}

RationalSparseMatrix RationalSparseMatrix::identity(std::size_t n)
{
    RationalSparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

RationalSparseMatrix RationalSparseMatrix::from_dense(const std::vector<std::vector<mpq_class>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalSparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

std::size_t RationalSparseMatrix::nnz() const
{
    std::size_t total = 0;
    for (const auto& col : columns_) total += col.size();
    return total;
}

mpq_class RationalSparseMatrix::get(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    auto it = columns_[c].find(r);
    return it == columns_[c].end() ? mpq_class(0) : it->second;
}

void RationalSparseMatrix::set(std::size_t r, std::size_t c, const mpq_class& value)
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    if (value == 0)
        columns_[c].erase(r);
    else
        (columns_[c][r] = value).canonicalize();
}

void RationalSparseMatrix::add(std::size_t r, std::size_t c, const mpq_class& value)
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    if (value == 0) return;
    auto [it, inserted] = columns_[c].try_emplace(r, value);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += value;
        if (it->second == 0) columns_[c].erase(it);
    }
}

RationalSparseMatrix RationalSparseMatrix::transpose() const
{
    RationalSparseMatrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : columns_[c]) t.columns_[r].emplace(c, v);
    return t;
}

RationalSparseMatrix RationalSparseMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                                    const std::vector<std::size_t>& col_perm) const
{
    if (row_perm.size() != rows_ || col_perm.size() != cols_) throw std::invalid_argument("permutation size mismatch");
    RationalSparseMatrix out(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : columns_[c]) out.columns_[col_perm[c]].emplace(row_perm[r], v);
    return out;
}

std::vector<std::vector<mpq_class>> RationalSparseMatrix::to_dense() const
{
    std::vector<std::vector<mpq_class>> d(rows_, std::vector<mpq_class>(cols_));
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : columns_[c]) d[r][c] = v;
    return d;
}

std::vector<std::tuple<std::size_t, std::size_t, mpq_class>> RationalSparseMatrix::entries() const
{
    std::vector<std::tuple<std::size_t, std::size_t, mpq_class>> out;
    const auto t = transpose();
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : t.columns_[r]) out.emplace_back(r, c, v);
    return out;
}

bool RationalSparseMatrix::operator==(const RationalSparseMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && columns_ == other.columns_;
}

RationalSparseMatrix multiply(const RationalSparseMatrix& a, const RationalSparseMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    RationalSparseMatrix out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (const auto& [k, bv] : b.column(c))
            for (const auto& [r, av] : a.column(k)) out.add(r, c, av * bv);
    return out;
}

RationalSparseMatrix subtract(const RationalSparseMatrix& a, const RationalSparseMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in subtract");
    RationalSparseMatrix out = a;
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (const auto& [r, v] : b.column(c)) out.add(r, c, -v);
    return out;
}

std::string format_rational(const mpq_class& q)
{
    mpq_class c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(const std::string& s)
{
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("malformed rational: " + s);
    q.canonicalize();
    return q;
}

void write_matrix_market(std::ostream& out, const RationalSparseMatrix& m)
{
    out << "%%matrix rational " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const auto& [r, c, v] : m.entries()) out << r + 1 << ' ' << c + 1 << ' ' << format_rational(v) << '\n';
}

RationalSparseMatrix read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("missing matrix header");
    std::istringstream header(line);
    std::string tag, kind;
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(header >> tag >> kind >> rows >> cols >> nnz) || tag != "%%matrix" || kind != "rational")
        throw std::invalid_argument("malformed matrix header: " + line);
    RationalSparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < nnz; ++i) {
        std::size_t r = 0, c = 0;
        std::string value;
        if (!(in >> r >> c >> value) || r == 0 || c == 0 || r > rows || c > cols)
            throw std::invalid_argument("malformed matrix entry");
        m.add(r - 1, c - 1, parse_rational(value));
    }
    return m;
}

} // namespace gcw
