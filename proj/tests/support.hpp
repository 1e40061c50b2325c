#ifndef MORIN_TESTS_SUPPORT_HPP
#define MORIN_TESTS_SUPPORT_HPP

#include <cctype>
#include <ostream>
#include <string>
#include <vector>

#include <morin/map_model.hpp>
#include <morin/polynomial.hpp>

namespace morin
{

template <class K>
void PrintTo(const Polynomial<K> &p, std::ostream *os)
{
    *os << to_string(p);
}

} // namespace morin

namespace testing_support
{

using namespace morin;

inline Polynomial<Rational> qp(const std::string &text, std::size_t n = 4)
{
    return parse_polynomial<Rational>(text, n);
}

inline Polynomial<Integer> zp(const std::string &text, std::size_t n = 4)
{
    return parse_polynomial<Integer>(text, n);
}

inline HomogeneousMap<Rational> qmap(const std::vector<int> &degrees, const std::vector<std::string> &comps)
{
    std::vector<Polynomial<Rational>> polys;
    for (const auto &c : comps) {
        polys.push_back(qp(c, degrees.size()));
    }
    return HomogeneousMap<Rational>(DegreeTuple(degrees), polys);
}

// Dense schoolbook product over a flat term list, used as an oracle for operator*.
template <class K>
Polynomial<K> naive_product(const Polynomial<K> &a, const Polynomial<K> &b)
{
    Polynomial<K> acc(a.n_vars());
    for (const auto &s : a.terms()) {
        for (const auto &t : b.terms()) {
            acc = acc + Polynomial<K>::monomial(a.n_vars(), s.mono * t.mono, s.coeff * t.coeff);
        }
    }
    return acc;
}

// Reads a TeX-style polynomial in d_{1}..d_{4}, e.g. "d_{1} d_{2} - 4 d_{1} + 10", as an
// integer polynomial in x1..x4. Written independently of parse_polynomial.
inline Polynomial<Integer> tex_poly(const std::string &text)
{
    std::vector<Polynomial<Integer>::Term> terms;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\n')) {
            ++i;
        }
    };
    skip();
    while (i < text.size()) {
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        }
        long coeff = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t used = 0;
            coeff = std::stol(text.substr(i), &used);
            i += used;
            skip();
        }
        Monomial m;
        while (i + 1 < text.size() && text.compare(i, 3, "d_{") == 0) {
            const std::size_t close = text.find('}', i);
            const auto var = std::stoul(text.substr(i + 3, close - i - 3));
            m.set(var - 1, m[var - 1] + 1);
            i = close + 1;
            skip();
        }
        terms.push_back({m, Integer(sign * coeff)});
    }
    return Polynomial<Integer>(4, terms);
}

// Coefficients of a^1..a^4 in the displayed expansion of c(f0), TeX as printed.
inline const char *const chern_display[4] = {
    "d_{1} + d_{2} + d_{3} + d_{4} - 4",
    "d_{1} d_{2} + d_{1} d_{3} + d_{1} d_{4} + d_{2} d_{3} + d_{2} d_{4} + d_{3} d_{4} - 4 d_{1} - 4 "
    "d_{2} - 4 d_{3} - 4 d_{4} + 10",
    "d_{1} d_{2} d_{3} + d_{1} d_{2} d_{4} + d_{1} d_{3} d_{4} + d_{2} d_{3} d_{4} - 4 d_{1} d_{2} - 4 "
    "d_{1} d_{3} - 4 d_{1} d_{4} - 4 d_{2} d_{3} - 4 d_{2} d_{4} - 4 d_{3} d_{4} + 10 d_{1} + 10 d_{2} "
    "+ 10 d_{3} + 10 d_{4} - 20",
    "d_{1} d_{2} d_{3} d_{4} - 4 d_{1} d_{2} d_{3} - 4 d_{1} d_{2} d_{4} - 4 d_{1} d_{3} d_{4} - 4 "
    "d_{2} d_{3} d_{4} + 10 d_{1} d_{2} + 10 d_{1} d_{3} + 10 d_{1} d_{4} + 10 d_{2} d_{3} + 10 d_{2} "
    "d_{4} + 10 d_{3} d_{4} - 20 d_{1} - 20 d_{2} - 20 d_{3} - 20 d_{4} + 35"};

} // namespace testing_support

#endif
