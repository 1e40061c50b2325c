#ifndef MORIN_MAP_MODEL_HPP
#define MORIN_MAP_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <morin/error.hpp>
#include <morin/field.hpp>
#include <morin/poly_matrix.hpp>
#include <morin/polynomial.hpp>
#include <morin/random.hpp>

namespace morin
{

// Component degrees (d1, ..., dn). Entries of 1 are admitted for linear test cases.
class DegreeTuple
{
public:
    DegreeTuple() = default;

    explicit DegreeTuple(std::vector<int> degrees) : d_(std::move(degrees))
    {
        if (d_.size() < 2) {
            throw usage_error("a degree tuple needs at least two entries");
        }
        if (d_.size() > max_vars) {
            throw usage_error("at most " + std::to_string(max_vars) + " components are supported");
        }
        for (int d : d_) {
            if (d < 1) {
                throw usage_error("degrees must be positive integers");
            }
        }
    }

    DegreeTuple(std::initializer_list<int> degrees) : DegreeTuple(std::vector<int>(degrees)) {}

    std::size_t size() const { return d_.size(); }
    int operator[](std::size_t i) const { return d_[i]; }
    const std::vector<int> &values() const { return d_; }

    // True when some degree is 1, outside the usual d_i >= 2 setting.
    bool has_linear_component() const
    {
        return std::any_of(d_.begin(), d_.end(), [](int d) { return d < 2; });
    }

    // Degree of the Jacobian determinant, sum of (d_i - 1).
    int jacobian_degree() const
    {
        int s = 0;
        for (int d : d_) {
            s += d - 1;
        }
        return s;
    }

    friend bool operator==(const DegreeTuple &, const DegreeTuple &) = default;

private:
    std::vector<int> d_;
};

// Visits every tail (i2, ..., in) with i2 + ... + in <= degree in lexicographic order.
inline void for_each_tail(std::size_t length, int degree, const std::function<void(const std::vector<unsigned> &)> &f)
{
    std::vector<unsigned> tail(length, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos == length) {
            f(tail);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            tail[pos] = unsigned(v);
            rec(pos + 1, remaining - v);
        }
        tail[pos] = 0;
    };
    rec(0, degree);
}

// Monomial x1^(d - sum tail) * x2^i2 * ... * xn^in.
inline Monomial tail_monomial(int degree, std::span<const unsigned> tail)
{
    unsigned used = 0;
    for (unsigned v : tail) {
        used += v;
    }
    if (int(used) > degree) {
        throw usage_error("exponent sum " + std::to_string(used) + " exceeds component degree "
                          + std::to_string(degree));
    }
    Monomial m;
    m.set(0, unsigned(degree) - used);
    for (std::size_t j = 0; j < tail.size(); ++j) {
        m.set(j + 1, tail[j]);
    }
    return m;
}

// F = (f1, ..., fn) with f_k homogeneous of degree d_k (the zero polynomial is admitted).
template <class K>
class HomogeneousMap
{
public:
    using coefficient_type = K;

    HomogeneousMap() = default;

    HomogeneousMap(DegreeTuple degrees, std::vector<Polynomial<K>> components)
        : degrees_(std::move(degrees)), components_(std::move(components))
    {
        const std::size_t n = degrees_.size();
        if (components_.size() != n) {
            throw usage_error("expected " + std::to_string(n) + " components, got "
                              + std::to_string(components_.size()));
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (components_[k].n_vars() != n) {
                throw usage_error("component " + std::to_string(k + 1) + " has the wrong number of variables");
            }
            const auto h = components_[k].homogeneous_degree();
            if (!h || (*h != any_degree && *h != degrees_[k])) {
                throw usage_error("component " + std::to_string(k + 1) + " is not homogeneous of degree "
                                  + std::to_string(degrees_[k]));
            }
        }
    }

    std::size_t n() const { return degrees_.size(); }
    const DegreeTuple &degrees() const { return degrees_; }
    const std::vector<Polynomial<K>> &components() const { return components_; }
    const Polynomial<K> &operator[](std::size_t k) const { return components_[k]; }

    template <class V>
    std::vector<V> operator()(std::span<const V> p) const
    {
        std::vector<V> out;
        out.reserve(n());
        for (const auto &f : components_) {
            out.push_back(f.template eval<V>(p));
        }
        return out;
    }

    friend bool operator==(const HomogeneousMap &, const HomogeneousMap &) = default;

private:
    DegreeTuple degrees_;
    std::vector<Polynomial<K>> components_;
};

// The coefficient a_{i2..in;k} of x1^(d_k - sum) x2^i2 ... xn^in in f_k (k is 0-based).
template <class K>
K coefficient(const HomogeneousMap<K> &F, std::size_t k, std::span<const unsigned> tail)
{
    if (k >= F.n()) {
        throw usage_error("component index out of range");
    }
    if (tail.size() + 1 != F.n()) {
        throw usage_error("expected " + std::to_string(F.n() - 1) + " exponents");
    }
    return F[k].coefficient(tail_monomial(F.degrees()[k], tail));
}

template <class K>
K coefficient(const HomogeneousMap<K> &F, std::size_t k, std::initializer_list<unsigned> tail)
{
    return coefficient(F, k, std::span<const unsigned>(tail.begin(), tail.size()));
}

// One coefficient table per component: (tail, value) pairs in any order.
template <class K>
using CoefficientTable = std::vector<std::vector<std::pair<std::vector<unsigned>, K>>>;

template <class K>
HomogeneousMap<K> from_coefficients(const DegreeTuple &degrees, const CoefficientTable<K> &table)
{
    const std::size_t n = degrees.size();
    if (table.size() != n) {
        throw usage_error("coefficient table has the wrong number of components");
    }
    std::vector<Polynomial<K>> comps;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<typename Polynomial<K>::Term> terms;
        for (const auto &[tail, value] : table[k]) {
            if (tail.size() + 1 != n) {
                throw usage_error("coefficient tail has the wrong length");
            }
            terms.push_back({tail_monomial(degrees[k], tail), value});
        }
        comps.emplace_back(n, std::move(terms));
    }
    return HomogeneousMap<K>(degrees, std::move(comps));
}

template <class K>
CoefficientTable<K> coefficient_table(const HomogeneousMap<K> &F)
{
    CoefficientTable<K> table(F.n());
    for (std::size_t k = 0; k < F.n(); ++k) {
        for_each_tail(F.n() - 1, F.degrees()[k], [&](const std::vector<unsigned> &tail) {
            table[k].emplace_back(tail, coefficient(F, k, tail));
        });
    }
    return table;
}

inline constexpr long default_coefficient_bound = 10;

// Every coefficient drawn independently in lexicographic tail order: integers uniform in
// [-bound, bound] for the exact kind, standard complex Gaussians for the float kind.
template <class K>
HomogeneousMap<K> random_map(const DegreeTuple &degrees, std::uint64_t seed, long bound = default_coefficient_bound)
{
    Rng rng(seed);
    const std::size_t n = degrees.size();
    std::vector<Polynomial<K>> comps;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<typename Polynomial<K>::Term> terms;
        for_each_tail(n - 1, degrees[k], [&](const std::vector<unsigned> &tail) {
            if constexpr (is_exact_v<K>) {
                terms.push_back({tail_monomial(degrees[k], tail), K(rng.uniform_int(-bound, bound))});
            } else {
                terms.push_back({tail_monomial(degrees[k], tail), rng.complex_normal()});
            }
        });
        comps.emplace_back(n, std::move(terms));
    }
    return HomogeneousMap<K>(degrees, std::move(comps));
}

template <class K>
PolyMatrix<K> jacobian(std::span<const Polynomial<K>> components)
{
    const std::size_t n = components.size();
    if (n == 0) {
        throw usage_error("jacobian of an empty map");
    }
    const std::size_t vars = components[0].n_vars();
    PolyMatrix<K> m(n, vars, vars);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < vars; ++j) {
            m(i, j) = components[i].partial(j);
        }
    }
    return m;
}

template <class K>
PolyMatrix<K> jacobian(const HomogeneousMap<K> &F)
{
    return jacobian(std::span<const Polynomial<K>>(F.components()));
}

template <class K>
Polynomial<K> jdet(const HomogeneousMap<K> &F)
{
    return det(jacobian(F));
}

struct EligibilityVerdict {
    enum class Tag { eligible_generic, hypothesis_fails, never_finite };
    Tag tag = Tag::eligible_generic;
    // Human-readable list of the failed gcd conditions; empty when eligible.
    std::string witness;
    std::vector<std::string> violations;
};

inline std::string_view tag_name(EligibilityVerdict::Tag t)
{
    switch (t) {
    case EligibilityVerdict::Tag::eligible_generic:
        return "eligible_generic";
    case EligibilityVerdict::Tag::hypothesis_fails:
        return "hypothesis_fails";
    case EligibilityVerdict::Tag::never_finite:
        return "never_finite";
    }
    return "unknown";
}

// Gcd conditions for A-finite determinacy of a generic germ C^4 -> C^4: every pairwise gcd
// at most 2 and every triple gcd equal to 1. A common factor of all four degrees rules it out.
inline EligibilityVerdict eligibility_gate(const DegreeTuple &degrees)
{
    if (degrees.size() != 4) {
        throw usage_error("the eligibility gate is defined for four components only");
    }
    const auto &d = degrees.values();
    EligibilityVerdict v;
    const int all = std::gcd(std::gcd(d[0], d[1]), std::gcd(d[2], d[3]));
    if (all > 1) {
        v.tag = EligibilityVerdict::Tag::never_finite;
        v.witness = "gcd(d1..d4)=" + std::to_string(all);
        v.violations.push_back(v.witness);
        return v;
    }
    auto name = [](std::initializer_list<int> idx) {
        std::string s = "gcd(";
        for (int i : idx) {
            s += (s.size() > 4 ? ",d" : "d") + std::to_string(i + 1);
        }
        return s + ")";
    };
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            for (int k = j + 1; k < 4; ++k) {
                const int g = std::gcd(std::gcd(d[i], d[j]), d[k]);
                if (g != 1) {
                    v.violations.push_back(name({i, j, k}) + "=" + std::to_string(g));
                }
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const int g = std::gcd(d[i], d[j]);
            if (g > 2) {
                v.violations.push_back(name({i, j}) + "=" + std::to_string(g));
            }
        }
    }
    if (!v.violations.empty()) {
        v.tag = EligibilityVerdict::Tag::hypothesis_fails;
        for (const auto &s : v.violations) {
            v.witness += (v.witness.empty() ? "" : "; ") + s;
        }
    }
    return v;
}

inline constexpr double default_vanishing_tol = 1e-9;

// Number of points on the line C*p sharing the image F(p); nullopt means F(p) = 0.
struct RayMultiplicity {
    std::optional<int> value;
    bool infinite() const { return !value.has_value(); }
    friend bool operator==(const RayMultiplicity &, const RayMultiplicity &) = default;
};

template <class V>
double euclidean_norm(std::span<const V> p)
{
    double s = 0;
    for (const auto &x : p) {
        const double m = field_traits<V>::magnitude(x);
        s += m * m;
    }
    return std::sqrt(s);
}

// gcd of the degrees of the components that do not vanish at p. Exact maps test exact zeros;
// float maps use |f_i(p)| <= tol * |p|^d_i.
template <class K>
RayMultiplicity ray_multiplicity(const HomogeneousMap<K> &F, std::span<const K> p,
                                 double tol = default_vanishing_tol)
{
    if (p.size() != F.n()) {
        throw usage_error("point has the wrong number of coordinates");
    }
    const double norm = euclidean_norm(p);
    if (norm == 0.0) {
        throw usage_error("ray_multiplicity is undefined at the origin");
    }
    int g = 0;
    for (std::size_t i = 0; i < F.n(); ++i) {
        const K v = F[i].template eval<K>(p);
        bool vanishes = false;
        if constexpr (is_exact_v<K>) {
            vanishes = field_traits<K>::is_zero(v);
        } else {
            vanishes = std::abs(v) <= tol * std::pow(norm, F.degrees()[i]);
        }
        if (!vanishes) {
            g = std::gcd(g, F.degrees()[i]);
        }
    }
    if (g == 0) {
        return {};
    }
    return {g};
}

template <class K>
RayMultiplicity ray_multiplicity(const HomogeneousMap<K> &F, const std::vector<K> &p,
                                 double tol = default_vanishing_tol)
{
    return ray_multiplicity(F, std::span<const K>(p), tol);
}

template <class To, class From>
HomogeneousMap<To> convert(const HomogeneousMap<From> &F)
{
    std::vector<Polynomial<To>> comps;
    for (const auto &f : F.components()) {
        comps.push_back(convert<To>(f));
    }
    return HomogeneousMap<To>(F.degrees(), std::move(comps));
}

} // namespace morin

#endif
