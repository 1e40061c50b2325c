#ifndef MORIN_POLY_MATRIX_HPP
#define MORIN_POLY_MATRIX_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <morin/error.hpp>
#include <morin/polynomial.hpp>

namespace morin
{

template <class K>
class PolyMatrix
{
public:
    PolyMatrix() = default;

    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n_vars)
        : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial<K>(n_vars))
    {
        if (rows == 0 || cols == 0) {
            throw usage_error("matrix dimensions must be positive");
        }
    }

    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial<K>> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries))
    {
        if (rows == 0 || cols == 0 || entries_.size() != rows * cols) {
            throw usage_error("matrix entry count does not match its shape");
        }
        for (const auto &e : entries_) {
            if (e.n_vars() != entries_.front().n_vars()) {
                throw usage_error("matrix entries live in different rings");
            }
        }
    }

    static PolyMatrix identity(std::size_t n, std::size_t n_vars)
    {
        PolyMatrix m(n, n, n_vars);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Polynomial<K>::constant(n_vars, field_traits<K>::one());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t n_vars() const { return entries_.front().n_vars(); }

    const Polynomial<K> &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Polynomial<K> &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    std::vector<Polynomial<K>> row(std::size_t r) const
    {
        return {entries_.begin() + std::ptrdiff_t(r * cols_), entries_.begin() + std::ptrdiff_t((r + 1) * cols_)};
    }

    PolyMatrix with_row(std::size_t r, std::span<const Polynomial<K>> values) const
    {
        if (r >= rows_ || values.size() != cols_) {
            throw usage_error("with_row: row index or length mismatch");
        }
        PolyMatrix m = *this;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (values[c].n_vars() != n_vars()) {
                throw usage_error("with_row: replacement row lives in a different ring");
            }
            m(r, c) = values[c];
        }
        return m;
    }

    friend bool operator==(const PolyMatrix &, const PolyMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Polynomial<K>> entries_;
};

namespace detail
{

// Laplace expansion down the rows with minors memoized by their column set. Rows
// [first_row, n) against the columns in `mask`; popcount(mask) == n - first_row.
template <class K>
class MinorTable
{
public:
    MinorTable(const PolyMatrix<K> &m, std::vector<std::size_t> row_order)
        : m_(m), rows_(std::move(row_order)), memo_(std::size_t{1} << m.cols())
    {
    }

    const Polynomial<K> &minor(std::uint32_t mask)
    {
        auto &slot = memo_[mask];
        if (slot) {
            return *slot;
        }
        const std::size_t depth = rows_.size() - std::size_t(std::popcount(mask));
        if (mask == 0) {
            slot = Polynomial<K>::constant(m_.n_vars(), field_traits<K>::one());
            return *slot;
        }
        const std::size_t r = rows_[depth];
        Polynomial<K> acc(m_.n_vars());
        int sign = 1;
        for (std::size_t c = 0; c < m_.cols(); ++c) {
            if (!(mask & (1u << c))) {
                continue;
            }
            const auto &entry = m_(r, c);
            if (!entry.is_zero()) {
                const auto &sub = minor(mask & ~(1u << c));
                if (!sub.is_zero()) {
                    auto prod = entry * sub;
                    acc = sign > 0 ? acc + prod : acc - prod;
                }
            }
            sign = -sign;
        }
        slot = std::move(acc);
        return *slot;
    }

private:
    const PolyMatrix<K> &m_;
    std::vector<std::size_t> rows_;
    std::vector<std::optional<Polynomial<K>>> memo_;
};

} // namespace detail

template <class K>
Polynomial<K> det(const PolyMatrix<K> &m)
{
    if (m.rows() != m.cols()) {
        throw usage_error("det: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() > 16) {
        throw usage_error("det: cofactor expansion limited to 16x16");
    }
    std::vector<std::size_t> order(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    detail::MinorTable<K> table(m, std::move(order));
    return table.minor((1u << m.cols()) - 1u);
}

// cof(i, j) = (-1)^(i+j) * det(m without row i and column j), so that for any row vector v,
// det(m with row i replaced by v) = sum_j v_j * cof(i, j).
template <class K>
PolyMatrix<K> cofactor_matrix(const PolyMatrix<K> &m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        throw usage_error("cofactor_matrix: matrix must be square");
    }
    PolyMatrix<K> cof(n, n, m.n_vars());
    if (n == 1) {
        cof(0, 0) = Polynomial<K>::constant(m.n_vars(), field_traits<K>::one());
        return cof;
    }
    const std::uint32_t full = (1u << n) - 1u;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t r = 0; r < n; ++r) {
            if (r != i) {
                others.push_back(r);
            }
        }
        detail::MinorTable<K> table(m, std::move(others));
        for (std::size_t j = 0; j < n; ++j) {
            const auto &minor = table.minor(full & ~(1u << j));
            cof(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    return cof;
}

} // namespace morin

#endif
