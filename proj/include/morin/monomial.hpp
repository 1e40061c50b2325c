#ifndef MORIN_MONOMIAL_HPP
#define MORIN_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>

#include <morin/error.hpp>

namespace morin
{

inline constexpr std::size_t max_vars = 8;

// Exponent vector x1^e1 * ... * xn^en. Slots past the owning polynomial's n_vars stay zero.
class Monomial
{
public:
    using exponent_type = std::uint16_t;

    Monomial() = default;

    Monomial(std::initializer_list<unsigned> exps) : Monomial(std::span<const unsigned>(exps.begin(), exps.size())) {}

    explicit Monomial(std::span<const unsigned> exps)
    {
        if (exps.size() > max_vars) {
            throw usage_error("monomial has more than " + std::to_string(max_vars) + " variables");
        }
        for (std::size_t i = 0; i < exps.size(); ++i) {
            set(i, exps[i]);
        }
    }

    static Monomial unit(std::size_t var, unsigned power = 1)
    {
        Monomial m;
        m.set(var, power);
        return m;
    }

    unsigned operator[](std::size_t i) const { return exps_[i]; }

    void set(std::size_t i, unsigned v)
    {
        if (i >= max_vars) {
            throw usage_error("variable index out of range");
        }
        if (v > 0xFFFFu) {
            throw usage_error("exponent overflow");
        }
        degree_ = static_cast<std::uint32_t>(degree_ - exps_[i] + v);
        exps_[i] = static_cast<exponent_type>(v);
    }

    unsigned degree() const { return degree_; }

    // Highest variable index with a nonzero exponent, plus one.
    std::size_t support_width() const
    {
        std::size_t w = max_vars;
        while (w > 0 && exps_[w - 1] == 0) {
            --w;
        }
        return w;
    }

    bool divides(const Monomial &other) const
    {
        for (std::size_t i = 0; i < max_vars; ++i) {
            if (exps_[i] > other.exps_[i]) {
                return false;
            }
        }
        return true;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial r;
        for (std::size_t i = 0; i < max_vars; ++i) {
            r.set(i, unsigned(a.exps_[i]) + b.exps_[i]);
        }
        return r;
    }

    // Exact quotient; the divisor must divide.
    friend Monomial operator/(const Monomial &a, const Monomial &b)
    {
        if (!b.divides(a)) {
            throw usage_error("monomial division is not exact");
        }
        Monomial r;
        for (std::size_t i = 0; i < max_vars; ++i) {
            r.set(i, unsigned(a.exps_[i]) - b.exps_[i]);
        }
        return r;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.exps_ == b.exps_; }

    // Graded lexicographic: total degree first, then x1 > x2 > ... .
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.degree_ <=> b.degree_; c != 0) {
            return c;
        }
        return a.exps_ <=> b.exps_;
    }

    std::size_t hash() const
    {
        std::uint64_t lo = 0, hi = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            lo |= std::uint64_t(exps_[i]) << (16 * i);
            hi |= std::uint64_t(exps_[i + 4]) << (16 * i);
        }
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
        h ^= (hi + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2));
        return static_cast<std::size_t>(h ^ (h >> 31));
    }

private:
    std::array<exponent_type, max_vars> exps_{};
    std::uint32_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

} // namespace morin

#endif
