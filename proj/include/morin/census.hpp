#ifndef MORIN_CENSUS_HPP
#define MORIN_CENSUS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <morin/error.hpp>
#include <morin/field.hpp>
#include <morin/map_model.hpp>
#include <morin/polynomial.hpp>

namespace morin
{

// Integer polynomial in the symbolic degrees d1..d4 (variables x1..x4).
using SymbolicInt = Polynomial<Integer>;

inline SymbolicInt symbolic_degree(std::size_t i) { return SymbolicInt::variable(4, i); }
inline SymbolicInt symbolic_constant(long c) { return SymbolicInt::constant(4, Integer(c)); }

// Power series in one formal variable a, truncated after a^Order.
template <class R, std::size_t Order = 4>
class TruncatedSeries
{
public:
    static constexpr std::size_t order = Order;

    explicit TruncatedSeries(const R &zero) { coeffs_.fill(zero); }

    explicit TruncatedSeries(std::array<R, Order + 1> coeffs) : coeffs_(std::move(coeffs)) {}

    const R &operator[](std::size_t i) const { return coeffs_[i]; }
    R &operator[](std::size_t i) { return coeffs_[i]; }
    const std::array<R, Order + 1> &coefficients() const { return coeffs_; }

    friend TruncatedSeries operator+(const TruncatedSeries &x, const TruncatedSeries &y)
    {
        TruncatedSeries r = x;
        for (std::size_t i = 0; i <= Order; ++i) {
            r.coeffs_[i] = x.coeffs_[i] + y.coeffs_[i];
        }
        return r;
    }

    // Cauchy product; terms of order > Order are discarded.
    friend TruncatedSeries operator*(const TruncatedSeries &x, const TruncatedSeries &y)
    {
        TruncatedSeries r = x;
        for (std::size_t k = 0; k <= Order; ++k) {
            R acc = x.coeffs_[0] * y.coeffs_[k];
            for (std::size_t i = 1; i <= k; ++i) {
                acc = acc + x.coeffs_[i] * y.coeffs_[k - i];
            }
            r.coeffs_[k] = std::move(acc);
        }
        return r;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    std::array<R, Order + 1> coeffs_;
};

using ChernSeries = TruncatedSeries<SymbolicInt, 4>;

// c(f0) = prod_i (1 + d_i a) / (1 + a)^4, expanded as the numerator times the geometric series
// sum_k u^k with u = -4a - 6a^2 - 4a^3 - a^4, everything truncated at a^4.
inline ChernSeries chern_series()
{
    const SymbolicInt zero(4);
    ChernSeries numerator(zero);
    numerator[0] = symbolic_constant(1);
    for (std::size_t i = 0; i < 4; ++i) {
        ChernSeries factor(zero);
        factor[0] = symbolic_constant(1);
        factor[1] = symbolic_degree(i);
        numerator = numerator * factor;
    }
    ChernSeries u(zero);
    u[1] = symbolic_constant(-4);
    u[2] = symbolic_constant(-6);
    u[3] = symbolic_constant(-4);
    u[4] = symbolic_constant(-1);
    ChernSeries geometric(zero);
    ChernSeries power(zero);
    power[0] = symbolic_constant(1);
    for (std::size_t k = 0; k <= ChernSeries::order; ++k) {
        geometric = geometric + power;
        power = power * u;
    }
    return numerator * geometric;
}

// The Chern classes c1..c4 and the Landweber-Novikov classes built from them.
template <class R>
struct CharacteristicClasses {
    std::array<R, 4> c;
    R s0, s1, s2, s3, s01, s11, s001;
};

// s0 = f0_*(1) = d1 d2 d3 d4, the rest through s1 = c1 s0, s2 = c1^2 s0, s3 = c1^3 s0,
// s01 = c2 s0, s11 = c1 c2 s0, s001 = c3 s0.
template <class R>
CharacteristicClasses<R> characteristic_classes(const std::array<R, 4> &c, const R &s0)
{
    CharacteristicClasses<R> k{c, s0, s0, s0, s0, s0, s0, s0};
    k.s1 = c[0] * s0;
    k.s2 = c[0] * c[0] * s0;
    k.s3 = c[0] * c[0] * c[0] * s0;
    k.s01 = c[1] * s0;
    k.s11 = c[0] * c[1] * s0;
    k.s001 = c[2] * s0;
    return k;
}

// Symbolic classes as polynomials in d1..d4.
inline CharacteristicClasses<SymbolicInt> symbolic_classes()
{
    const auto series = chern_series();
    SymbolicInt s0 = symbolic_degree(0) * symbolic_degree(1) * symbolic_degree(2) * symbolic_degree(3);
    return characteristic_classes<SymbolicInt>({series[1], series[2], series[3], series[4]}, s0);
}

struct SClasses {
    Integer s0, s1, s2, s3, s01, s11, s001;
};

inline void require_four(const DegreeTuple &degrees)
{
    if (degrees.size() != 4) {
        throw usage_error("the census is defined for maps C^4 -> C^4 only");
    }
}

inline std::array<Integer, 4> chern_classes(const DegreeTuple &degrees)
{
    require_four(degrees);
    static const ChernSeries series = chern_series();
    const std::vector<Integer> point{degrees[0], degrees[1], degrees[2], degrees[3]};
    return {series[1].eval<Integer>(point), series[2].eval<Integer>(point), series[3].eval<Integer>(point),
            series[4].eval<Integer>(point)};
}

inline SClasses s_classes(const DegreeTuple &degrees)
{
    const auto c = chern_classes(degrees);
    const Integer s0 = Integer(degrees[0]) * degrees[1] * degrees[2] * degrees[3];
    const auto k = characteristic_classes<Integer>(c, s0);
    return {k.s0, k.s1, k.s2, k.s3, k.s01, k.s11, k.s001};
}

// Numerators and denominators of the six counts, in the order
// A1^4, A1^2 A2, A1 A3, A2^2, A4, I_{2,2}.
inline constexpr std::array<const char *, 6> count_names{"A1_4", "A1_2A2", "A1A3", "A2_2", "A4", "I22"};
inline constexpr std::array<long, 6> count_denominators{24, 2, 1, 2, 1, 1};

template <class R>
std::array<R, 6> count_numerators(const CharacteristicClasses<R> &k)
{
    const R &c1 = k.c[0], &c2 = k.c[1], &c3 = k.c[2], &c4 = k.c[3];
    const R &s1 = k.s1, &s2 = k.s2, &s3 = k.s3, &s01 = k.s01, &s11 = k.s11, &s001 = k.s001;
    auto n = [](long v) { return Integer(v); };
    const R c1s = c1 * c1;

    R a1_4 = s1 * s1 * s1 * c1 - n(12) * (s1 * s2 * c1) + n(40) * (s3 * c1) - n(6) * (s1 * s01 * c1)
             + n(56) * (s11 * c1) + n(24) * (s001 * c1) - n(12) * (s1 * s1 * c1s) + n(48) * (s2 * c1s)
             + n(24) * (s01 * c1s) + n(120) * (s1 * c1s * c1) - n(672) * (c1s * c1s) - n(6) * (s1 * s1 * c2)
             + n(24) * (s2 * c2) + n(12) * (s01 * c2) + n(168) * (s1 * c1 * c2) - n(1776) * (c1s * c2)
             - n(288) * (c2 * c2) + n(72) * (s1 * c3) - n(1584) * (c1 * c3) - n(720) * c4;

    R a1_2a2 = s2 * c1 + s01 * c1 - n(6) * (c1s * c1) - n(12) * (c1 * c2) - n(6) * c3;

    R a1a3 = s3 * c1 + n(3) * (s11 * c1) + n(2) * (s001 * c1) - n(8) * (c1s * c1s) - n(36) * (c1s * c2)
             - n(8) * (c2 * c2) - n(44) * (c1 * c3) - n(24) * c4;

    R a2_2 = s2 * c1s + s01 * c1s - n(9) * (c1s * c1s) + s2 * c2 + s01 * c2 - n(36) * (c1s * c2)
             - n(12) * (c2 * c2) - n(39) * (c1 * c3) - n(24) * c4;

    R a4 = c1s * c1s + n(6) * (c1s * c2) + n(2) * (c2 * c2) + n(9) * (c1 * c3) + n(6) * c4;

    R i22 = c2 * c2 - c1 * c3;

    return {a1_4, a1_2a2, a1a3, a2_2, a4, i22};
}

struct CensusReport {
    DegreeTuple degrees;
    EligibilityVerdict eligibility;
    std::array<Integer, 4> c;
    SClasses s;
    // Exact values; integral whenever the tuple is eligible.
    std::array<Rational, 6> counts;
    // Negative or fractional counts are reported here rather than rejected.
    std::vector<std::string> warnings;

    bool integral() const
    {
        for (const auto &v : counts) {
            if (v.get_den() != 1) {
                return false;
            }
        }
        return true;
    }
};

// A fractional count on an eligible tuple is an internal error. Ineligible tuples keep the
// fraction with a warning: #A2^2 is a half-integer exactly when three degrees are even.
inline CensusReport census(const DegreeTuple &degrees)
{
    require_four(degrees);
    CensusReport r;
    r.degrees = degrees;
    r.eligibility = eligibility_gate(degrees);
    r.c = chern_classes(degrees);
    r.s = s_classes(degrees);
    const CharacteristicClasses<Integer> k{r.c, r.s.s0, r.s.s1, r.s.s2, r.s.s3, r.s.s01, r.s.s11, r.s.s001};
    const auto num = count_numerators(k);
    const bool eligible = r.eligibility.tag == EligibilityVerdict::Tag::eligible_generic;
    for (std::size_t i = 0; i < 6; ++i) {
        r.counts[i] = Rational(num[i], count_denominators[i]);
        r.counts[i].canonicalize();
        if (r.counts[i].get_den() != 1) {
            if (eligible) {
                throw computation_error(std::string("census: count ") + count_names[i] + " is not an integer");
            }
            r.warnings.push_back(std::string(count_names[i]) + " is not an integer");
        }
        if (sgn(r.counts[i]) < 0) {
            r.warnings.push_back(std::string(count_names[i]) + " is negative");
        }
    }
    return r;
}

} // namespace morin

#endif
