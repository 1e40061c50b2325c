#ifndef MORIN_COORDINATES_HPP
#define MORIN_COORDINATES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <morin/error.hpp>
#include <morin/linalg.hpp>
#include <morin/polynomial.hpp>
#include <morin/random.hpp>

namespace morin
{

// A random integer matrix of determinant +-1: a permutation times unit lower and upper
// triangular factors with entries in [-bound, bound]. The exact inverse comes along.
struct UnimodularPair {
    DenseMatrix<Rational> forward;
    DenseMatrix<Rational> inverse;
};

inline DenseMatrix<Rational> multiply(const DenseMatrix<Rational> &a, const DenseMatrix<Rational> &b)
{
    if (a.cols != b.rows) {
        throw usage_error("matrix product shape mismatch");
    }
    DenseMatrix<Rational> r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (sgn(a(i, k)) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols; ++j) {
                r(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return r;
}

inline DenseMatrix<Rational> exact_inverse(const DenseMatrix<Rational> &m)
{
    const std::size_t n = m.rows;
    if (n != m.cols) {
        throw usage_error("inverse of a non-square matrix");
    }
    DenseMatrix<Rational> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(aug(p, c)) == 0) {
            ++p;
        }
        if (p == n) {
            throw computation_error("matrix is singular");
        }
        for (std::size_t k = 0; k < 2 * n; ++k) {
            std::swap(aug(p, k), aug(c, k));
        }
        const Rational piv = aug(c, c);
        for (std::size_t k = 0; k < 2 * n; ++k) {
            aug(c, k) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(aug(r, c)) == 0) {
                continue;
            }
            const Rational f = aug(r, c);
            for (std::size_t k = 0; k < 2 * n; ++k) {
                aug(r, k) -= f * aug(c, k);
            }
        }
    }
    DenseMatrix<Rational> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = aug(i, n + j);
        }
    }
    return inv;
}

inline UnimodularPair random_unimodular(std::size_t n, std::uint64_t seed, long bound = 2)
{
    Rng rng(seed);
    DenseMatrix<Rational> lower(n, n), upper(n, n), perm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        lower(i, i) = 1;
        upper(i, i) = rng.uniform_int(0, 1) == 0 ? 1 : -1;
        for (std::size_t j = 0; j < i; ++j) {
            lower(i, j) = rng.uniform_int(-bound, bound);
            upper(j, i) = rng.uniform_int(-bound, bound);
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[std::size_t(rng.uniform_int(0, long(i) - 1))]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        perm(i, order[i]) = 1;
    }
    UnimodularPair out;
    out.forward = multiply(perm, multiply(lower, upper));
    out.inverse = exact_inverse(out.forward);
    return out;
}

// The linear forms (L x)_i as polynomials in n variables.
template <class K>
std::vector<Polynomial<K>> linear_forms(const DenseMatrix<Rational> &L)
{
    std::vector<Polynomial<K>> forms;
    for (std::size_t i = 0; i < L.rows; ++i) {
        std::vector<typename Polynomial<K>::Term> terms;
        for (std::size_t j = 0; j < L.cols; ++j) {
            if (sgn(L(i, j)) != 0) {
                terms.push_back({Monomial::unit(j), convert_coefficient<K>(L(i, j))});
            }
        }
        forms.emplace_back(L.cols, std::move(terms));
    }
    return forms;
}

// Source change: components of F o L.
template <class K>
std::vector<Polynomial<K>> compose_source(std::span<const Polynomial<K>> F, const DenseMatrix<Rational> &L)
{
    const auto forms = linear_forms<K>(L);
    std::vector<Polynomial<K>> out;
    for (const auto &f : F) {
        out.push_back(compose(f, std::span<const Polynomial<K>>(forms)));
    }
    return out;
}

// Target change: components of M o F.
template <class K>
std::vector<Polynomial<K>> compose_target(const DenseMatrix<Rational> &M, std::span<const Polynomial<K>> F)
{
    if (M.cols != F.size()) {
        throw usage_error("target change has the wrong size");
    }
    std::vector<Polynomial<K>> out;
    for (std::size_t i = 0; i < M.rows; ++i) {
        Polynomial<K> acc(F[0].n_vars());
        for (std::size_t j = 0; j < M.cols; ++j) {
            if (sgn(M(i, j)) != 0) {
                acc += convert_coefficient<K>(M(i, j)) * F[j];
            }
        }
        out.push_back(std::move(acc));
    }
    return out;
}

template <class K>
std::vector<K> apply(const DenseMatrix<Rational> &L, std::span<const K> p)
{
    std::vector<K> out(L.rows, field_traits<K>::zero());
    for (std::size_t i = 0; i < L.rows; ++i) {
        for (std::size_t j = 0; j < L.cols; ++j) {
            out[i] += convert_coefficient<K>(L(i, j)) * p[j];
        }
    }
    return out;
}

} // namespace morin

#endif
