#ifndef MORIN_LINALG_HPP
#define MORIN_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <morin/error.hpp>
#include <morin/field.hpp>

namespace morin
{

// Dense row-major square or rectangular matrix of scalars.
template <class K>
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<K> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, field_traits<K>::zero()) {}

    K &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const K &operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

inline Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex> &m)
{
    Eigen::MatrixXcd e(Eigen::Index(m.rows), Eigen::Index(m.cols));
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            e(Eigen::Index(r), Eigen::Index(c)) = m(r, c);
        }
    }
    return e;
}

// Gaussian elimination over the rationals; returns the rank and leaves `m` in echelon form.
inline std::size_t exact_eliminate(DenseMatrix<Rational> &m, Rational *det_out = nullptr)
{
    std::size_t rank = 0;
    Rational det = 1;
    for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows && sgn(m(pivot, c)) == 0) {
            ++pivot;
        }
        if (pivot == m.rows) {
            det = 0;
            continue;
        }
        if (pivot != rank) {
            for (std::size_t k = 0; k < m.cols; ++k) {
                std::swap(m(pivot, k), m(rank, k));
            }
            det = -det;
        }
        const Rational p = m(rank, c);
        det *= p;
        for (std::size_t r = rank + 1; r < m.rows; ++r) {
            if (sgn(m(r, c)) == 0) {
                continue;
            }
            const Rational f = m(r, c) / p;
            for (std::size_t k = c; k < m.cols; ++k) {
                if (sgn(m(rank, k)) != 0) {
                    m(r, k) -= f * m(rank, k);
                }
            }
        }
        ++rank;
    }
    if (det_out) {
        *det_out = (rank == m.rows && m.rows == m.cols) ? det : Rational(0);
    }
    return rank;
}

template <class K>
K determinant(const DenseMatrix<K> &m)
{
    if (m.rows != m.cols) {
        throw usage_error("determinant of a non-square matrix");
    }
    if (m.rows == 0) {
        return field_traits<K>::one();
    }
    if constexpr (std::is_same_v<K, Rational>) {
        DenseMatrix<Rational> work = m;
        Rational d;
        exact_eliminate(work, &d);
        return d;
    } else if constexpr (std::is_same_v<K, Integer>) {
        DenseMatrix<Rational> work(m.rows, m.cols);
        for (std::size_t i = 0; i < m.data.size(); ++i) {
            work.data[i] = Rational(m.data[i]);
        }
        Rational d;
        exact_eliminate(work, &d);
        return Integer(d);
    } else {
        return to_eigen(m).partialPivLu().determinant();
    }
}

// Exact rank for rationals; numerical rank for floats, counting singular values above
// tol * (largest singular value).
template <class K>
std::size_t rank(const DenseMatrix<K> &m, double tol)
{
    if constexpr (std::is_same_v<K, Rational>) {
        (void)tol;
        DenseMatrix<Rational> work = m;
        return exact_eliminate(work);
    } else {
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
        const auto &sv = svd.singularValues();
        if (sv.size() == 0 || sv(0) == 0.0) {
            return 0;
        }
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > tol * sv(0)) {
                ++r;
            }
        }
        return r;
    }
}

} // namespace morin

#endif
