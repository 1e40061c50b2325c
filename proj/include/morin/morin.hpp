#ifndef MORIN_MORIN_HPP
#define MORIN_MORIN_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <morin/error.hpp>
#include <morin/linalg.hpp>
#include <morin/map_model.hpp>
#include <morin/poly_matrix.hpp>
#include <morin/polynomial.hpp>

namespace morin
{

// A square polynomial map germ; unlike HomogeneousMap, components may be inhomogeneous.
template <class K>
class GeneralMap
{
public:
    using field_type = K;

    GeneralMap() = default;

    explicit GeneralMap(std::vector<Polynomial<K>> components) : components_(std::move(components))
    {
        if (components_.empty()) {
            throw usage_error("a map needs at least one component");
        }
        for (const auto &f : components_) {
            if (f.n_vars() != components_.size()) {
                throw usage_error("map components must have as many variables as there are components");
            }
        }
    }

    explicit GeneralMap(const HomogeneousMap<K> &F) : GeneralMap(F.components()) {}

    std::size_t n() const { return components_.size(); }
    const std::vector<Polynomial<K>> &components() const { return components_; }
    const Polynomial<K> &operator[](std::size_t i) const { return components_[i]; }

private:
    std::vector<Polynomial<K>> components_;
};

inline constexpr int max_tower_levels = 6;
inline constexpr int default_k_max = 4;
inline constexpr double default_classify_tol = 1e-7;

// J(F) together with the iterated determinants J_{k,i}(F): J_{1,i} replaces row i of the
// Jacobian matrix by grad J(F), J_{k+1,i} replaces it by grad J_{k,i}(F).
//
// Each determinant is expanded along the replaced row against the cofactors of the Jacobian
// matrix, which are computed once. Levels are built on first use and cached; the object is
// logically immutable and safe to query from several threads.
template <class K>
class MorinTower
{
public:
    explicit MorinTower(GeneralMap<K> F, int eager_levels = 0)
        : map_(std::move(F)), jacobian_(morin::jacobian(std::span<const Polynomial<K>>(map_.components()))),
          cofactors_(cofactor_matrix(jacobian_)), jdet_(det(jacobian_))
    {
        if (eager_levels < 0 || eager_levels > max_tower_levels) {
            throw usage_error("tower depth must be between 1 and " + std::to_string(max_tower_levels));
        }
        if (eager_levels > 0) {
            level(eager_levels);
        }
    }

    MorinTower(const MorinTower &) = delete;
    MorinTower &operator=(const MorinTower &) = delete;

    const GeneralMap<K> &map() const { return map_; }
    std::size_t n() const { return map_.n(); }
    const PolyMatrix<K> &jacobian() const { return jacobian_; }
    const PolyMatrix<K> &cofactors() const { return cofactors_; }
    const Polynomial<K> &jdet() const { return jdet_; }

    // The polynomials J_{k,1}, ..., J_{k,n} (k is 1-based).
    const std::vector<Polynomial<K>> &level(int k) const
    {
        if (k < 1 || k > max_tower_levels) {
            throw usage_error("tower level " + std::to_string(k) + " outside 1.." + std::to_string(max_tower_levels));
        }
        std::lock_guard lock(mutex_);
        while (int(levels_.size()) < k) {
            std::vector<Polynomial<K>> next;
            next.reserve(n());
            for (std::size_t i = 0; i < n(); ++i) {
                const Polynomial<K> &prev = levels_.empty() ? jdet_ : levels_.back()[i];
                next.push_back(expand_replaced_row(i, prev));
            }
            levels_.push_back(std::move(next));
        }
        return levels_[std::size_t(k - 1)];
    }

    int levels_computed() const
    {
        std::lock_guard lock(mutex_);
        return int(levels_.size());
    }

private:
    // det(Jacobian with row i replaced by grad g).
    Polynomial<K> expand_replaced_row(std::size_t i, const Polynomial<K> &g) const
    {
        Polynomial<K> acc(n());
        for (std::size_t j = 0; j < n(); ++j) {
            const auto &c = cofactors_(i, j);
            if (c.is_zero()) {
                continue;
            }
            const auto dg = g.partial(j);
            if (!dg.is_zero()) {
                acc += c * dg;
            }
        }
        return acc;
    }

    GeneralMap<K> map_;
    PolyMatrix<K> jacobian_;
    PolyMatrix<K> cofactors_;
    Polynomial<K> jdet_;
    mutable std::mutex mutex_;
    mutable std::deque<std::vector<Polynomial<K>>> levels_;
};

// Builds J_{k,i} for every k <= k_max up front.
template <class K>
MorinTower<K> morin_tower_of(GeneralMap<K> F, int k_max);

struct SingularityClass {
    enum class Tag { regular, morin, corank_ge_2, indeterminate };

    struct Diagnostics {
        double jdet_abs = 0;
        // max_i |J_{k,i}(p)| for each level that was evaluated.
        std::vector<double> level_max;
        int corank = 0;
        double tol = 0;
        bool exact = false;
    };

    Tag tag = Tag::regular;
    // Morin index: 1 fold, 2 cusp, 3 swallowtail.
    int k = 0;
    Diagnostics diagnostics;

    bool is_morin(int index) const { return tag == Tag::morin && k == index; }

    std::string name() const
    {
        switch (tag) {
        case Tag::regular:
            return "regular";
        case Tag::corank_ge_2:
            return "corank_ge_2";
        case Tag::indeterminate:
            return "indeterminate";
        case Tag::morin:
            return k <= 3 ? "A" + std::to_string(k) : "Ak";
        }
        return "unknown";
    }

    // Label that keeps k for higher Morin types, for histograms.
    std::string label() const { return tag == Tag::morin ? "A" + std::to_string(k) : name(); }

    friend bool operator==(const SingularityClass &a, const SingularityClass &b)
    {
        return a.tag == b.tag && a.k == b.k;
    }
};

struct ClassifyOptions {
    int k_max = default_k_max;
    double tol = default_classify_tol;
};

namespace detail
{

// Exact kinds test for zero; float kinds use |v| <= tol * (1 + |p|)^deg.
template <class K>
bool vanishes(const K &value, int degree, double point_norm, double tol)
{
    if constexpr (is_exact_v<K>) {
        (void)degree, (void)point_norm, (void)tol;
        return field_traits<K>::is_zero(value);
    } else {
        return std::abs(value) <= tol * std::pow(1.0 + point_norm, std::max(degree, 0));
    }
}

template <class K>
DenseMatrix<K> evaluate(const PolyMatrix<K> &m, std::span<const K> p)
{
    DenseMatrix<K> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c).template eval<K>(p);
        }
    }
    return out;
}

} // namespace detail

template <class K>
MorinTower<K> morin_tower_of(GeneralMap<K> F, int k_max)
{
    if (k_max < 1 || k_max > max_tower_levels) {
        throw usage_error("k_max must be between 1 and " + std::to_string(max_tower_levels));
    }
    return MorinTower<K>(std::move(F), k_max);
}

// n - rank dF(p); exact rank over the rationals, singular-value thresholding for floats.
template <class K>
int corank_at(const MorinTower<K> &tower, std::span<const K> p, double tol = default_classify_tol)
{
    if (p.size() != tower.n()) {
        throw usage_error("point has the wrong number of coordinates");
    }
    const auto dF = detail::evaluate(tower.jacobian(), p);
    return int(tower.n()) - int(rank(dF, tol));
}

template <class K>
int corank_at(const GeneralMap<K> &F, std::span<const K> p, double tol = default_classify_tol)
{
    if (p.size() != F.n()) {
        throw usage_error("point has the wrong number of coordinates");
    }
    const auto dF = detail::evaluate(jacobian(std::span<const Polynomial<K>>(F.components())), p);
    return int(F.n()) - int(rank(dF, tol));
}

// Regular if J(F)(p) != 0; corank >= 2 if the differential drops rank twice; otherwise A_k for
// the first level k at which some J_{k,i}(F)(p) is nonzero, or indeterminate if none up to k_max.
template <class K>
SingularityClass classify(const MorinTower<K> &tower, std::span<const K> p, const ClassifyOptions &opt = {})
{
    if (opt.k_max < 1 || opt.k_max > max_tower_levels) {
        throw usage_error("k_max must be between 1 and " + std::to_string(max_tower_levels));
    }
    if (p.size() != tower.n()) {
        throw usage_error("point has " + std::to_string(p.size()) + " coordinates, expected "
                          + std::to_string(tower.n()));
    }
    const double pnorm = euclidean_norm(p);
    SingularityClass out;
    out.diagnostics.tol = opt.tol;
    out.diagnostics.exact = is_exact_v<K>;

    const K j = tower.jdet().template eval<K>(p);
    out.diagnostics.jdet_abs = field_traits<K>::magnitude(j);
    if (!detail::vanishes(j, tower.jdet().total_degree(), pnorm, opt.tol)) {
        out.tag = SingularityClass::Tag::regular;
        return out;
    }
    out.diagnostics.corank = corank_at(tower, p, opt.tol);
    if (out.diagnostics.corank >= 2) {
        out.tag = SingularityClass::Tag::corank_ge_2;
        return out;
    }
    for (int k = 1; k <= opt.k_max; ++k) {
        const auto &lvl = tower.level(k);
        double level_max = 0;
        bool nonzero = false;
        for (const auto &g : lvl) {
            const K v = g.template eval<K>(p);
            level_max = std::max(level_max, field_traits<K>::magnitude(v));
            if (!detail::vanishes(v, g.total_degree(), pnorm, opt.tol)) {
                nonzero = true;
            }
        }
        out.diagnostics.level_max.push_back(level_max);
        if (nonzero) {
            out.tag = SingularityClass::Tag::morin;
            out.k = k;
            return out;
        }
    }
    out.tag = SingularityClass::Tag::indeterminate;
    return out;
}

template <class K>
SingularityClass classify(const MorinTower<K> &tower, const std::vector<K> &p, const ClassifyOptions &opt = {})
{
    return classify(tower, std::span<const K>(p), opt);
}

template <class K>
SingularityClass classify(const GeneralMap<K> &F, const std::vector<K> &p, const ClassifyOptions &opt = {})
{
    const MorinTower<K> tower(F);
    return classify(tower, std::span<const K>(p), opt);
}

} // namespace morin

#endif
