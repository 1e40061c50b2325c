#ifndef MORIN_FIELD_HPP
#define MORIN_FIELD_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <morin/error.hpp>

namespace morin
{

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

enum class CoefficientKind { rational, complex };

inline std::string_view kind_name(CoefficientKind k)
{
    return k == CoefficientKind::rational ? "rational" : "complex";
}

inline CoefficientKind parse_kind(std::string_view s)
{
    if (s == "rational") {
        return CoefficientKind::rational;
    }
    if (s == "complex") {
        return CoefficientKind::complex;
    }
    throw usage_error("unknown coefficient kind '" + std::string(s) + "'");
}

namespace detail
{

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\n\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string &s)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw usage_error("malformed number '" + s + "'");
    }
    if (used != s.size()) {
        throw usage_error("malformed number '" + s + "'");
    }
    return v;
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Per-coefficient-type operations used by the polynomial machinery.
template <class K>
struct field_traits;

template <>
struct field_traits<Integer> {
    static constexpr bool exact = true;
    static constexpr const char *name = "integer";
    static Integer zero() { return 0; }
    static Integer one() { return 1; }
    static Integer from_int(long v) { return v; }
    static bool is_zero(const Integer &v) { return sgn(v) == 0; }
    static double magnitude(const Integer &v) { return std::fabs(v.get_d()); }
    static Complex to_complex(const Integer &v) { return {v.get_d(), 0.0}; }
    static std::string to_string(const Integer &v) { return v.get_str(); }
    static void normalize(Integer &) {}
    static Integer parse(std::string_view text)
    {
        const auto s = detail::trim(text);
        Integer v;
        if (s.empty() || v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) {
            throw usage_error("malformed integer '" + s + "'");
        }
        return v;
    }
};

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char *name = "rational";
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_int(long v) { return v; }
    static bool is_zero(const Rational &v) { return sgn(v) == 0; }
    static double magnitude(const Rational &v) { return std::fabs(v.get_d()); }
    static Complex to_complex(const Rational &v) { return {v.get_d(), 0.0}; }
    static std::string to_string(const Rational &v) { return v.get_str(); }
    // mpq_class(n, d) does not reduce; comparisons assume reduced form.
    static void normalize(Rational &v) { v.canonicalize(); }
    static Rational parse(std::string_view text)
    {
        auto s = detail::trim(text);
        if (!s.empty() && s[0] == '+') {
            s.erase(0, 1);
        }
        Rational v;
        if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos || v.set_str(s, 10) != 0) {
            throw usage_error("malformed rational '" + s + "'");
        }
        if (sgn(v.get_den()) == 0) {
            throw usage_error("zero denominator in '" + s + "'");
        }
        v.canonicalize();
        return v;
    }
};

template <>
struct field_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char *name = "complex";
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const Complex &v) { return v.real() == 0.0 && v.imag() == 0.0; }
    static double magnitude(const Complex &v) { return std::abs(v); }
    static Complex to_complex(const Complex &v) { return v; }
    static std::string to_string(const Complex &v)
    {
        return "(" + detail::format_double(v.real()) + "," + detail::format_double(v.imag()) + ")";
    }
    static void normalize(Complex &) {}
    // Accepts "(re,im)" or a bare real number.
    static Complex parse(std::string_view text)
    {
        const auto s = detail::trim(text);
        if (s.empty()) {
            throw usage_error("empty complex literal");
        }
        if (s.front() != '(') {
            return {detail::parse_double(s), 0.0};
        }
        const auto comma = s.find(',');
        if (s.back() != ')' || comma == std::string::npos) {
            throw usage_error("malformed complex literal '" + s + "'");
        }
        return {detail::parse_double(detail::trim(s.substr(1, comma - 1))),
                detail::parse_double(detail::trim(s.substr(comma + 1, s.size() - comma - 2)))};
    }
};

template <class K>
inline constexpr bool is_exact_v = field_traits<K>::exact;

// Coefficient conversion between kinds; exact -> float is lossy, the reverse is rejected.
template <class To, class From>
To convert_coefficient(const From &v)
{
    if constexpr (std::is_same_v<To, From>) {
        return v;
    } else if constexpr (std::is_same_v<To, Complex>) {
        return field_traits<From>::to_complex(v);
    } else if constexpr (std::is_same_v<To, Rational> && std::is_same_v<From, Integer>) {
        return Rational(v);
    } else {
        static_assert(sizeof(To) == 0, "unsupported coefficient conversion");
    }
}

} // namespace morin

#endif
