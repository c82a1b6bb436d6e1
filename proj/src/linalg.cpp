#include "gcw/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

const mpz_class* find_entry(const IntRow& row, std::size_t col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& entry, std::size_t c) { return entry.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

void exact_divide(mpz_class& value, const mpz_class& divisor)
{
    if (!mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()))
        throw InvariantViolation("fraction-free elimination produced a non-integral entry");
    mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
}

// (pivot * row - factor * pivot_row) / prev
IntRow bareiss_update(const IntRow& row, const IntRow& pivot_row, const mpz_class& pivot,
                      const mpz_class& factor, const mpz_class& prev)
{
    IntRow out;
    out.reserve(row.size() + pivot_row.size());
    auto a = row.begin(), b = pivot_row.begin();
    while (a != row.end() || b != pivot_row.end()) {
        mpz_class value;
        std::size_t col;
        if (b == pivot_row.end() || (a != row.end() && a->first < b->first)) {
            col = a->first;
            value = pivot * a->second;
            ++a;
        } else if (a == row.end() || b->first < a->first) {
            col = b->first;
            value = -factor * b->second;
            ++b;
        } else {
            col = a->first;
            value = pivot * a->second - factor * b->second;
            ++a;
            ++b;
        }
        if (value == 0) continue;
        exact_divide(value, prev);
        out.emplace_back(col, std::move(value));
    }
    return out;
}

std::vector<IntRow> integral_rows(const RationalSparseMatrix& m)
{
    const auto t = m.transpose();
    std::vector<IntRow> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class scale = 1;
        for (const auto& [c, v] : t.column(r)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
        for (const auto& [c, v] : t.column(r)) {
            mpz_class scaled = v.get_num() * (scale / v.get_den());
            rows[r].emplace_back(c, std::move(scaled));
        }
    }
    return rows;
}

} // namespace

EliminationResult rank_nullity(const RationalSparseMatrix& m)
{
    auto rows = integral_rows(m);
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rows[r].empty()) active.push_back(r);

    EliminationResult result;
    mpz_class prev = 1;
    std::vector<std::size_t> col_count(m.cols());
    while (!active.empty()) {
        std::fill(col_count.begin(), col_count.end(), 0);
        for (std::size_t r : active)
            for (const auto& [c, v] : rows[r]) ++col_count[c];

        std::size_t best_row = 0, best_col = 0, best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t r : active) // active is ascending, entries ascending: first hit wins ties
            for (const auto& [c, v] : rows[r]) {
                const std::size_t cost = (rows[r].size() - 1) * (col_count[c] - 1);
                if (cost < best_cost || (cost == best_cost && (r < best_row || (r == best_row && c < best_col)))) {
                    best_cost = cost;
                    best_row = r;
                    best_col = c;
                }
            }

        const IntRow pivot_row = rows[best_row];
        const mpz_class pivot = *find_entry(pivot_row, best_col);
        std::vector<std::size_t> still_active;
        for (std::size_t r : active) {
            if (r == best_row) continue;
            const mpz_class* hit = find_entry(rows[r], best_col);
            const mpz_class factor = hit ? *hit : mpz_class(0);
            rows[r] = bareiss_update(rows[r], pivot_row, pivot, factor, prev);
            if (!rows[r].empty()) still_active.push_back(r);
        }
        rows[best_row].clear();
        active = std::move(still_active);
        prev = pivot;
        result.pivot_columns.push_back(best_col);
        ++result.rank;
    }
    std::sort(result.pivot_columns.begin(), result.pivot_columns.end());
    result.kernel_dim = m.cols() - result.rank;
    return result;
}

bool image_in_kernel(const RationalSparseMatrix& a_in, const RationalSparseMatrix& a_out)
{
    return multiply(a_out, a_in).is_zero();
}

std::vector<std::vector<mpq_class>> kernel_basis(const RationalSparseMatrix& m)
{
    auto a = m.to_dense();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_of_row;
    std::vector<char> is_pivot(cols, 0);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_row.push_back(c);
        is_pivot[c] = 1;
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<mpq_class> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_of_row.size(); ++i) v[pivot_of_row[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalSparseMatrix columns_to_matrix(std::size_t rows, const std::vector<std::vector<mpq_class>>& columns)
{
    RationalSparseMatrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) out.set(r, c, columns[c][r]);
    }
    return out;
}

RationalSparseMatrix hconcat(const RationalSparseMatrix& a, const RationalSparseMatrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row count mismatch");
    RationalSparseMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) out.mutable_column(c) = a.column(c);
    for (std::size_t c = 0; c < b.cols(); ++c) out.mutable_column(a.cols() + c) = b.column(c);
    return out;
}

} // namespace gcw
