#ifndef MORIN_PROPERNESS_HPP
#define MORIN_PROPERNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <morin/coordinates.hpp>
#include <morin/error.hpp>
#include <morin/linalg.hpp>
#include <morin/map_model.hpp>
#include <morin/polynomial.hpp>
#include <morin/random.hpp>

namespace morin
{

// Sylvester matrix of two univariate coefficient lists (ascending powers): deg q shifted
// copies of p's coefficients followed by deg p shifted copies of q's, laid out from the
// constant term upward. With this layout Res(t - a, t - b) = b - a.
template <class K>
DenseMatrix<K> sylvester_matrix(std::span<const K> p, std::span<const K> q)
{
    if (p.empty() || q.empty()) {
        throw usage_error("sylvester_matrix: empty coefficient list");
    }
    const std::size_t m = p.size() - 1;
    const std::size_t n = q.size() - 1;
    DenseMatrix<K> s(m + n, m + n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i <= m; ++i) {
            s(r, r + i) = p[i];
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i <= n; ++i) {
            s(n + r, r + i) = q[i];
        }
    }
    return s;
}

namespace detail
{

// Ascending coefficient list: univariate polynomials by their degree, binary forms by the
// exponent of x1 (x2 dehomogenized to 1) padded to the form's degree.
template <class K>
std::vector<K> resultant_coefficients(const Polynomial<K> &p)
{
    if (p.is_zero()) {
        throw usage_error("resultant of the zero polynomial");
    }
    if (p.n_vars() == 1) {
        std::vector<K> c(std::size_t(p.total_degree()) + 1, field_traits<K>::zero());
        for (const auto &t : p.terms()) {
            c[t.mono[0]] = t.coeff;
        }
        return c;
    }
    if (p.n_vars() == 2) {
        const auto h = p.homogeneous_degree();
        if (!h) {
            throw usage_error("resultant of bivariate input requires binary forms");
        }
        std::vector<K> c(std::size_t(*h) + 1, field_traits<K>::zero());
        for (const auto &t : p.terms()) {
            c[t.mono[0]] = t.coeff;
        }
        return c;
    }
    throw usage_error("resultant input must be univariate or a binary form");
}

} // namespace detail

// Sylvester resultant: zero iff p and q share a root (a projective root for binary forms).
template <class K>
K sylvester_resultant(const Polynomial<K> &p, const Polynomial<K> &q)
{
    if (p.n_vars() != q.n_vars()) {
        throw usage_error("resultant inputs live in different rings");
    }
    const auto a = detail::resultant_coefficients(p);
    const auto b = detail::resultant_coefficients(q);
    return determinant(sylvester_matrix<K>(a, b));
}

struct PropernessVerdict {
    enum class Tag { proper_certified, not_proper, inconclusive };
    Tag tag = Tag::inconclusive;
    std::string certificate;
    std::optional<std::vector<Complex>> witness;
};

inline std::string_view tag_name(PropernessVerdict::Tag t)
{
    switch (t) {
    case PropernessVerdict::Tag::proper_certified:
        return "proper_certified";
    case PropernessVerdict::Tag::not_proper:
        return "not_proper";
    case PropernessVerdict::Tag::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

// All monomials of total degree d in n variables, in descending graded-lex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d)
{
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned remaining) {
        if (pos + 1 == n) {
            m.set(pos, remaining);
            out.push_back(m);
            m.set(pos, 0);
            return;
        }
        for (unsigned v = remaining + 1; v-- > 0;) {
            m.set(pos, v);
            rec(pos + 1, remaining - v);
        }
        m.set(pos, 0);
    };
    rec(0, d);
    return out;
}

// Classical Macaulay matrix in degree nu = sum(d_i - 1) + 1. Rows and columns are indexed by
// the degree-nu monomials; the row of monomial m belongs to the first i with x_i^d_i | m and
// holds the coefficients of (m / x_i^d_i) * f_i. Its determinant is the resultant times an
// extraneous minor.
template <class K>
DenseMatrix<K> macaulay_matrix(std::span<const Polynomial<K>> F, const DegreeTuple &degrees)
{
    const std::size_t n = degrees.size();
    if (F.size() != n) {
        throw usage_error("macaulay_matrix: one component per degree expected");
    }
    const unsigned nu = unsigned(degrees.jacobian_degree() + 1);
    const auto monos = monomials_of_degree(n, nu);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        index.emplace(monos[i], i);
    }
    DenseMatrix<K> M(monos.size(), monos.size());
    for (std::size_t r = 0; r < monos.size(); ++r) {
        const Monomial &m = monos[r];
        std::size_t owner = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (int(m[i]) >= degrees[i]) {
                owner = i;
                break;
            }
        }
        if (owner == n) {
            throw computation_error("macaulay_matrix: monomial without a reducing variable");
        }
        const Monomial shift = m / Monomial::unit(owner, unsigned(degrees[owner]));
        for (const auto &t : F[owner].terms()) {
            M(r, index.at(shift * t.mono)) = t.coeff;
        }
    }
    return M;
}

struct FalsifierOptions {
    // Only candidates with normalized residual below this are polished.
    double threshold = 1.0;
    std::size_t candidates = 16;
    int newton_iterations = 20;
    double newton_tol = 1e-12;
};

namespace detail
{

template <class K>
std::vector<Polynomial<Complex>> normalized_components(const HomogeneousMap<K> &F)
{
    std::vector<Polynomial<Complex>> out;
    for (const auto &f : F.components()) {
        auto g = convert<Complex>(f);
        const double s = g.norm1();
        out.push_back(s > 0 ? Complex(1.0 / s) * g : g);
    }
    return out;
}

inline double residual_norm(const std::vector<Polynomial<Complex>> &F, std::span<const Complex> x)
{
    double s = 0;
    for (const auto &f : F) {
        s += std::norm(f.eval<Complex>(x));
    }
    return std::sqrt(s);
}

} // namespace detail

// Gauss-Newton polish of F(x) = 0 under the affine normalization conj(x0) . x = 1.
// Returns the unit-norm zero on convergence.
inline std::optional<std::vector<Complex>> polish_common_zero(const std::vector<Polynomial<Complex>> &F,
                                                              const std::vector<std::vector<Polynomial<Complex>>> &dF,
                                                              std::vector<Complex> x, int max_degree,
                                                              const FalsifierOptions &opt)
{
    const std::size_t n = x.size();
    const std::vector<Complex> anchor = x;
    for (int it = 0; it <= opt.newton_iterations; ++it) {
        Eigen::VectorXcd rhs(Eigen::Index(F.size() + 1));
        for (std::size_t i = 0; i < F.size(); ++i) {
            rhs(Eigen::Index(i)) = -F[i].eval<Complex>(x);
        }
        Complex constraint = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            constraint += std::conj(anchor[j]) * x[j];
        }
        rhs(Eigen::Index(F.size())) = -constraint;

        double xnorm = euclidean_norm(std::span<const Complex>(x));
        const double res = detail::residual_norm(F, x);
        if (res < opt.newton_tol * (1.0 + std::pow(xnorm, max_degree)) && std::abs(constraint) < 1e-10) {
            for (auto &v : x) {
                v /= xnorm;
            }
            return x;
        }
        if (it == opt.newton_iterations || !std::isfinite(res)) {
            break;
        }
        Eigen::MatrixXcd J(Eigen::Index(F.size() + 1), Eigen::Index(n));
        for (std::size_t i = 0; i < F.size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                J(Eigen::Index(i), Eigen::Index(j)) = dF[i][j].eval<Complex>(x);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            J(Eigen::Index(F.size()), Eigen::Index(j)) = std::conj(anchor[j]);
        }
        const Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(rhs);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += step(Eigen::Index(j));
        }
    }
    return std::nullopt;
}

// Samples the unit sphere for near-zeros of F and polishes the best candidates. A returned
// point is a numerically verified nonzero common zero; absence of a witness proves nothing.
template <class K>
std::optional<std::vector<Complex>> sphere_falsifier(const HomogeneousMap<K> &F, std::size_t samples,
                                                     std::uint64_t seed, const FalsifierOptions &opt = {})
{
    const std::size_t n = F.n();
    const auto G = detail::normalized_components(F);
    std::vector<std::vector<Polynomial<Complex>>> dG(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dG[i].push_back(G[i].partial(j));
        }
    }
    int max_degree = 0;
    for (int d : F.degrees().values()) {
        max_degree = std::max(max_degree, d);
    }

    Rng rng(seed);
    std::vector<std::pair<double, std::vector<Complex>>> best;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Complex> x(n);
        double norm = 0;
        do {
            for (auto &v : x) {
                v = rng.complex_normal();
            }
            norm = euclidean_norm(std::span<const Complex>(x));
        } while (norm == 0.0);
        for (auto &v : x) {
            v /= norm;
        }
        const double r = detail::residual_norm(G, x);
        if (r >= opt.threshold) {
            continue;
        }
        best.emplace_back(r, std::move(x));
        if (best.size() > 4 * opt.candidates) {
            std::nth_element(best.begin(), best.begin() + std::ptrdiff_t(opt.candidates), best.end(),
                             [](const auto &a, const auto &b) { return a.first < b.first; });
            best.resize(opt.candidates);
        }
    }
    std::sort(best.begin(), best.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    if (best.size() > opt.candidates) {
        best.resize(opt.candidates);
    }
    for (const auto &[r, x] : best) {
        if (auto w = polish_common_zero(G, dG, x, max_degree, opt)) {
            return w;
        }
    }
    return std::nullopt;
}

struct MacaulayOptions {
    int retries = 3;
    std::uint64_t seed = 0;
    std::size_t falsifier_samples = 2000;
};

// Certifies F^{-1}(0) = {0} by a nonzero Macaulay determinant, retrying under random
// unimodular coordinate changes when the determinant vanishes by accident. A vanishing
// determinant is escalated to not_proper only with an explicit reason: a zero or repeated
// component (exact), or a polished common zero from the sphere falsifier.
inline PropernessVerdict macaulay_resultant_certificate(const HomogeneousMap<Rational> &F,
                                                        const MacaulayOptions &opt = {})
{
    const auto &degrees = F.degrees();
    const std::size_t n = F.n();
    const unsigned nu = unsigned(degrees.jacobian_degree() + 1);
    PropernessVerdict v;
    std::vector<Polynomial<Rational>> comps = F.components();
    for (int attempt = 0; attempt <= opt.retries; ++attempt) {
        if (attempt > 0) {
            const auto L = random_unimodular(n, derive_seed(opt.seed, std::uint64_t(attempt)));
            comps = compose_source(std::span<const Polynomial<Rational>>(F.components()), L.forward);
        }
        const auto M = macaulay_matrix(std::span<const Polynomial<Rational>>(comps), degrees);
        if (sgn(determinant(M)) != 0) {
            v.tag = PropernessVerdict::Tag::proper_certified;
            v.certificate = "nonzero Macaulay determinant in degree " + std::to_string(nu) + " ("
                            + std::to_string(M.rows) + "x" + std::to_string(M.cols) + ", attempt "
                            + std::to_string(attempt) + ")";
            return v;
        }
    }

    std::string reason;
    for (std::size_t i = 0; i < n && reason.empty(); ++i) {
        if (F[i].is_zero()) {
            reason = "component " + std::to_string(i + 1) + " is identically zero";
        }
        for (std::size_t j = i + 1; j < n && reason.empty(); ++j) {
            if (degrees[i] != degrees[j] || F[j].is_zero()) {
                continue;
            }
            const Rational ratio = F[i].terms().front().coeff / F[j].terms().front().coeff;
            if (F[i] == ratio * F[j]) {
                reason = "components " + std::to_string(i + 1) + " and " + std::to_string(j + 1)
                         + " are proportional";
            }
        }
    }
    const auto witness = sphere_falsifier(F, opt.falsifier_samples, derive_seed(opt.seed, 1000));
    if (!reason.empty() || witness) {
        v.tag = PropernessVerdict::Tag::not_proper;
        v.certificate = reason.empty() ? "polished nonzero common zero" : reason + " (resultant is exactly zero)";
        v.witness = witness;
        return v;
    }
    v.tag = PropernessVerdict::Tag::inconclusive;
    v.certificate = "Macaulay determinant vanished after " + std::to_string(opt.retries) + " coordinate changes";
    return v;
}

// Float maps cannot be certified; only a falsifier witness is informative.
inline PropernessVerdict falsifier_verdict(const HomogeneousMap<Complex> &F, std::size_t samples, std::uint64_t seed)
{
    PropernessVerdict v;
    if (auto w = sphere_falsifier(F, samples, seed)) {
        v.tag = PropernessVerdict::Tag::not_proper;
        v.certificate = "polished nonzero common zero";
        v.witness = std::move(w);
    } else {
        v.tag = PropernessVerdict::Tag::inconclusive;
        v.certificate = "no common zero found on " + std::to_string(samples) + " sphere samples (not a certificate)";
    }
    return v;
}

} // namespace morin

#endif
