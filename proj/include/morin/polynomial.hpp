#ifndef MORIN_POLYNOMIAL_HPP
#define MORIN_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <morin/error.hpp>
#include <morin/field.hpp>
#include <morin/monomial.hpp>

namespace morin
{

// Returned by homogeneous_degree() for the zero polynomial, which is homogeneous of every degree.
inline constexpr int any_degree = -1;

// Sparse multivariate polynomial in canonical form: terms sorted by descending graded-lex
// order, no zero coefficients. Values are immutable once built; all operations are pure.
template <class K>
class Polynomial
{
public:
    using coefficient_type = K;
    using traits = field_traits<K>;

    struct Term {
        Monomial mono;
        K coeff;
        friend bool operator==(const Term &, const Term &) = default;
    };

    Polynomial() = default;

    explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) { check_width(n_vars); }

    // Sums duplicate monomials and drops zeros.
    Polynomial(std::size_t n_vars, std::vector<Term> terms) : n_vars_(n_vars)
    {
        check_width(n_vars);
        for (const auto &t : terms) {
            if (t.mono.support_width() > n_vars) {
                throw usage_error("term uses a variable beyond n_vars");
            }
        }
        std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.mono > b.mono; });
        for (auto &t : terms) {
            traits::normalize(t.coeff);
            if (!terms_.empty() && terms_.back().mono == t.mono) {
                terms_.back().coeff += t.coeff;
                if (traits::is_zero(terms_.back().coeff)) {
                    terms_.pop_back();
                }
            } else if (!traits::is_zero(t.coeff)) {
                terms_.push_back(std::move(t));
            }
        }
    }

    static Polynomial constant(std::size_t n_vars, const K &c)
    {
        return Polynomial(n_vars, {Term{Monomial{}, c}});
    }

    static Polynomial variable(std::size_t n_vars, std::size_t i)
    {
        if (i >= n_vars) {
            throw usage_error("variable index out of range");
        }
        return Polynomial(n_vars, {Term{Monomial::unit(i), traits::one()}});
    }

    static Polynomial monomial(std::size_t n_vars, const Monomial &m, const K &c = traits::one())
    {
        return Polynomial(n_vars, {Term{m, c}});
    }

    std::size_t n_vars() const { return n_vars_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero polynomial.
    int total_degree() const { return terms_.empty() ? -1 : int(terms_.front().mono.degree()); }

    // Common degree of all terms, any_degree for zero, nullopt if inhomogeneous.
    std::optional<int> homogeneous_degree() const
    {
        if (terms_.empty()) {
            return any_degree;
        }
        const auto d = terms_.front().mono.degree();
        for (const auto &t : terms_) {
            if (t.mono.degree() != d) {
                return std::nullopt;
            }
        }
        return int(d);
    }

    // Highest exponent of variable i appearing in any term.
    unsigned degree_in(std::size_t i) const
    {
        unsigned d = 0;
        for (const auto &t : terms_) {
            d = std::max(d, t.mono[i]);
        }
        return d;
    }

    K coefficient(const Monomial &m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term &t, const Monomial &key) { return t.mono > key; });
        if (it != terms_.end() && it->mono == m) {
            return it->coeff;
        }
        return traits::zero();
    }

    // Sum of coefficient magnitudes; bounds |p| on the closed unit polydisc.
    double norm1() const
    {
        double s = 0;
        for (const auto &t : terms_) {
            s += traits::magnitude(t.coeff);
        }
        return s;
    }

    double max_abs_coefficient() const
    {
        double s = 0;
        for (const auto &t : terms_) {
            s = std::max(s, traits::magnitude(t.coeff));
        }
        return s;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
    }

    Polynomial operator-() const
    {
        Polynomial r(n_vars_);
        r.terms_ = terms_;
        for (auto &t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        require_same_ring(a, b);
        if (a.is_zero() || b.is_zero()) {
            return Polynomial(a.n_vars_);
        }
        if (a.size() == 1 && a.terms_[0].mono == Monomial{}) {
            return a.terms_[0].coeff * b;
        }
        if (b.size() == 1 && b.terms_[0].mono == Monomial{}) {
            return b.terms_[0].coeff * a;
        }
        std::unordered_map<Monomial, K, MonomialHash> acc;
        acc.reserve(a.size() * b.size());
        for (const auto &ta : a.terms_) {
            for (const auto &tb : b.terms_) {
                auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, ta.coeff * tb.coeff);
                if (!inserted) {
                    it->second += ta.coeff * tb.coeff;
                }
            }
        }
        std::vector<Term> out;
        out.reserve(acc.size());
        for (auto &[m, c] : acc) {
            if (!traits::is_zero(c)) {
                out.push_back(Term{m, std::move(c)});
            }
        }
        std::sort(out.begin(), out.end(), [](const Term &x, const Term &y) { return x.mono > y.mono; });
        Polynomial r(a.n_vars_);
        r.terms_ = std::move(out);
        return r;
    }

    friend Polynomial operator*(const K &c, const Polynomial &p)
    {
        Polynomial r(p.n_vars_);
        if (traits::is_zero(c)) {
            return r;
        }
        r.terms_.reserve(p.size());
        for (const auto &t : p.terms_) {
            K v = c * t.coeff;
            if (!traits::is_zero(v)) {
                r.terms_.push_back(Term{t.mono, std::move(v)});
            }
        }
        return r;
    }

    Polynomial &operator+=(const Polynomial &o) { return *this = *this + o; }
    Polynomial &operator-=(const Polynomial &o) { return *this = *this - o; }
    Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

    Polynomial pow(unsigned e) const
    {
        Polynomial result = constant(n_vars_, traits::one());
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) {
                result *= base;
            }
            e >>= 1u;
            if (e > 0) {
                base *= base;
            }
        }
        return result;
    }

    // Formal partial derivative with respect to variable i.
    Polynomial partial(std::size_t i) const
    {
        if (i >= n_vars_) {
            throw usage_error("partial: variable index " + std::to_string(i) + " out of range");
        }
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            const unsigned e = t.mono[i];
            if (e == 0) {
                continue;
            }
            Monomial m = t.mono;
            m.set(i, e - 1);
            out.push_back(Term{m, traits::from_int(long(e)) * t.coeff});
        }
        return Polynomial(n_vars_, std::move(out));
    }

    Polynomial partial(std::size_t i, unsigned times) const
    {
        Polynomial r = *this;
        for (unsigned k = 0; k < times; ++k) {
            r = r.partial(i);
        }
        return r;
    }

    // Evaluation at a point whose coordinates have type V; coefficients are converted to V.
    template <class V>
    V eval(std::span<const V> point) const
    {
        if (point.size() != n_vars_) {
            throw usage_error("eval: point has " + std::to_string(point.size()) + " coordinates, expected "
                              + std::to_string(n_vars_));
        }
        std::vector<std::vector<V>> powers(n_vars_);
        for (std::size_t i = 0; i < n_vars_; ++i) {
            const unsigned d = degree_in(i);
            powers[i].reserve(d + 1);
            powers[i].push_back(field_traits<V>::one());
            for (unsigned e = 1; e <= d; ++e) {
                powers[i].push_back(powers[i].back() * point[i]);
            }
        }
        V sum = field_traits<V>::zero();
        for (const auto &t : terms_) {
            V term = convert_coefficient<V>(t.coeff);
            for (std::size_t i = 0; i < n_vars_; ++i) {
                if (t.mono[i] != 0) {
                    term *= powers[i][t.mono[i]];
                }
            }
            sum += term;
        }
        return sum;
    }

    template <class V>
    V eval(const std::vector<V> &point) const
    {
        return eval(std::span<const V>(point));
    }

private:
    static void check_width(std::size_t n)
    {
        if (n > max_vars) {
            throw usage_error("at most " + std::to_string(max_vars) + " variables are supported");
        }
    }

    static void require_same_ring(const Polynomial &a, const Polynomial &b)
    {
        if (a.n_vars_ != b.n_vars_) {
            throw usage_error("polynomials live in different rings (" + std::to_string(a.n_vars_) + " vs "
                              + std::to_string(b.n_vars_) + " variables)");
        }
    }

    static Polynomial merge(const Polynomial &a, const Polynomial &b, bool subtract)
    {
        require_same_ring(a, b);
        Polynomial r(a.n_vars_);
        r.terms_.reserve(a.size() + b.size());
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->mono > ib->mono)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->mono > ia->mono) {
                r.terms_.push_back(Term{ib->mono, subtract ? K(-ib->coeff) : ib->coeff});
                ++ib;
            } else {
                K c = subtract ? K(ia->coeff - ib->coeff) : K(ia->coeff + ib->coeff);
                if (!traits::is_zero(c)) {
                    r.terms_.push_back(Term{ia->mono, std::move(c)});
                }
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::size_t n_vars_ = 0;
    std::vector<Term> terms_;
};

// Coefficient-wise conversion to another kind (exact -> float, integer -> rational).
template <class To, class From>
Polynomial<To> convert(const Polynomial<From> &p)
{
    std::vector<typename Polynomial<To>::Term> terms;
    terms.reserve(p.size());
    for (const auto &t : p.terms()) {
        terms.push_back({t.mono, convert_coefficient<To>(t.coeff)});
    }
    return Polynomial<To>(p.n_vars(), std::move(terms));
}

// Substitute polynomials for the variables of p: p(subs[0], ..., subs[n-1]).
template <class K>
Polynomial<K> compose(const Polynomial<K> &p, std::span<const Polynomial<K>> subs)
{
    if (subs.size() != p.n_vars()) {
        throw usage_error("compose: expected one substitution per variable");
    }
    if (subs.empty()) {
        throw usage_error("compose: nothing to substitute");
    }
    const std::size_t m = subs[0].n_vars();
    for (const auto &s : subs) {
        if (s.n_vars() != m) {
            throw usage_error("compose: substitutions live in different rings");
        }
    }
    std::vector<std::vector<Polynomial<K>>> powers(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const unsigned d = p.degree_in(i);
        powers[i].push_back(Polynomial<K>::constant(m, field_traits<K>::one()));
        for (unsigned e = 1; e <= d; ++e) {
            powers[i].push_back(powers[i].back() * subs[i]);
        }
    }
    Polynomial<K> result(m);
    for (const auto &t : p.terms()) {
        Polynomial<K> term = Polynomial<K>::constant(m, t.coeff);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (t.mono[i] != 0) {
                term *= powers[i][t.mono[i]];
            }
        }
        result += term;
    }
    return result;
}

template <class K>
Polynomial<K> compose(const Polynomial<K> &p, const std::vector<Polynomial<K>> &subs)
{
    return compose(p, std::span<const Polynomial<K>>(subs));
}

// Text form: terms joined by " + ", each "c * x1^a1*x3^a3"; zero exponents are omitted and
// a unit coefficient is still written out. The zero polynomial prints as "0".
template <class K>
std::string to_string(const Polynomial<K> &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &t : p.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += field_traits<K>::to_string(t.coeff);
        std::string mono;
        for (std::size_t i = 0; i < p.n_vars(); ++i) {
            if (t.mono[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += "x" + std::to_string(i + 1) + "^" + std::to_string(t.mono[i]);
        }
        if (!mono.empty()) {
            out += " * " + mono;
        }
    }
    return out;
}

namespace detail
{

// Splits on a top-level separator, ignoring separators inside parentheses.
inline std::vector<std::string> split_top_level(std::string_view s, std::string_view sep)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        } else if (depth == 0 && s.substr(i, sep.size()) == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + sep.size();
            i += sep.size() - 1;
        }
    }
    parts.emplace_back(s.substr(start));
    return parts;
}

inline Monomial parse_monomial(std::string_view text, std::size_t n_vars)
{
    Monomial m;
    for (const auto &raw : split_top_level(text, "*")) {
        const auto f = trim(raw);
        if (f.size() < 2 || f[0] != 'x') {
            throw usage_error("malformed variable factor '" + f + "'");
        }
        const auto caret = f.find('^');
        const std::string idx = f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        const std::string ex = caret == std::string::npos ? "1" : f.substr(caret + 1);
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos || ex.empty()
            || ex.find_first_not_of("0123456789") != std::string::npos) {
            throw usage_error("malformed variable factor '" + f + "'");
        }
        const auto var = std::stoul(idx);
        if (var == 0 || var > n_vars) {
            throw usage_error("variable x" + idx + " out of range");
        }
        m.set(var - 1, m[var - 1] + unsigned(std::stoul(ex)));
    }
    return m;
}

} // namespace detail

// Inverse of to_string. Also accepts bare monomials ("x1^2") and omitted exponents ("x1*x2").
template <class K>
Polynomial<K> parse_polynomial(std::string_view text, std::size_t n_vars)
{
    const auto body = detail::trim(text);
    if (body.empty()) {
        throw usage_error("empty polynomial text");
    }
    if (body == "0") {
        return Polynomial<K>(n_vars);
    }
    std::vector<typename Polynomial<K>::Term> terms;
    for (const auto &raw : detail::split_top_level(body, " + ")) {
        const auto term = detail::trim(raw);
        const auto star = detail::split_top_level(term, " * ");
        if (star.size() > 2) {
            throw usage_error("malformed term '" + term + "'");
        }
        if (star.size() == 2) {
            terms.push_back({detail::parse_monomial(star[1], n_vars), field_traits<K>::parse(star[0])});
        } else if (!term.empty() && term[0] == 'x') {
            terms.push_back({detail::parse_monomial(term, n_vars), field_traits<K>::one()});
        } else {
            terms.push_back({Monomial{}, field_traits<K>::parse(term)});
        }
    }
    return Polynomial<K>(n_vars, std::move(terms));
}

} // namespace morin

#endif
