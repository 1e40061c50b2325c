#ifndef MORIN_SAMPLER_HPP
#define MORIN_SAMPLER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <morin/error.hpp>
#include <morin/field.hpp>
#include <morin/map_model.hpp>
#include <morin/morin.hpp>
#include <morin/parallel.hpp>
#include <morin/polynomial.hpp>
#include <morin/properness.hpp>
#include <morin/random.hpp>
#include <morin/roots.hpp>

namespace morin
{

using ComplexPoint = std::vector<Complex>;

namespace detail
{

inline ComplexPoint gaussian_point(Rng &rng, std::size_t n)
{
    ComplexPoint p(n);
    for (auto &v : p) {
        v = rng.complex_normal();
    }
    return p;
}

inline double norm(const ComplexPoint &p) { return euclidean_norm(std::span<const Complex>(p)); }

inline ComplexPoint normalized(ComplexPoint p)
{
    const double s = norm(p);
    for (auto &v : p) {
        v /= s;
    }
    return p;
}

// Linear forms x_i = base_i + sum_k t_k * dir_k[i] in len(dir) parameters.
inline std::vector<Polynomial<Complex>> affine_parametrization(const ComplexPoint &base,
                                                               const std::vector<ComplexPoint> &dirs)
{
    const std::size_t params = dirs.size();
    std::vector<Polynomial<Complex>> forms;
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::vector<Polynomial<Complex>::Term> terms{{Monomial{}, base[i]}};
        for (std::size_t k = 0; k < params; ++k) {
            terms.push_back({Monomial::unit(k), dirs[k][i]});
        }
        forms.emplace_back(params, std::move(terms));
    }
    return forms;
}

// Newton on a univariate polynomial, keeping only steps that reduce the residual.
inline Complex newton_polish(std::span<const Complex> coeffs, Complex t, int steps = 8)
{
    for (int s = 0; s < steps; ++s) {
        const auto h = horner(coeffs, t);
        if (h.derivative == Complex(0) || h.value == Complex(0)) {
            break;
        }
        const Complex next = t - h.value / h.derivative;
        if (std::abs(horner(coeffs, next).value) < std::abs(h.value)) {
            t = next;
        } else {
            break;
        }
    }
    return t;
}

// Gauss-Newton projection of x onto the common zeros of `eqs`, each equation scaled by its
// coefficient 1-norm. Steps are minimum-norm least-squares solutions with singular values
// below rank_tol * sigma_max discarded, so overdetermined systems with a rank-deficient
// Jacobian (such as the cusp conditions) converge to the nearby solution set. Only steps that
// reduce the scaled residual are taken. Returns the final scaled residual norm.
inline double project_onto_zeros(const std::vector<Polynomial<Complex>> &eqs,
                                 const std::vector<std::vector<Polynomial<Complex>>> &grads, ComplexPoint &x,
                                 int iterations = 8, double rank_tol = 1e-8)
{
    const std::size_t m = eqs.size(), n = x.size();
    std::vector<double> scale(m);
    for (std::size_t i = 0; i < m; ++i) {
        scale[i] = eqs[i].norm1() > 0 ? 1.0 / eqs[i].norm1() : 0.0;
    }
    auto residual = [&](const ComplexPoint &y, Eigen::VectorXcd *out) {
        double r = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Complex v = scale[i] * eqs[i].eval<Complex>(y);
            if (out) {
                (*out)(Eigen::Index(i)) = -v;
            }
            r += std::norm(v);
        }
        return std::sqrt(r);
    };
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(m));
    double r = residual(x, &rhs);
    for (int it = 0; it < iterations && r > 0; ++it) {
        Eigen::MatrixXcd Jm(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Jm(Eigen::Index(i), Eigen::Index(j)) = scale[i] * grads[i][j].eval<Complex>(x);
            }
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(Jm.rows(), Jm.cols());
        cod.setThreshold(rank_tol);
        cod.compute(Jm);
        const Eigen::VectorXcd step = cod.solve(rhs);
        ComplexPoint y = x;
        for (std::size_t j = 0; j < n; ++j) {
            y[j] += step(Eigen::Index(j));
        }
        Eigen::VectorXcd next_rhs(static_cast<Eigen::Index>(m));
        const double next = residual(y, &next_rhs);
        if (!(next < r)) {
            break;
        }
        x = std::move(y);
        rhs = next_rhs;
        r = next;
    }
    return r;
}

inline std::vector<std::vector<Polynomial<Complex>>> gradients(const std::vector<Polynomial<Complex>> &eqs)
{
    std::vector<std::vector<Polynomial<Complex>>> g(eqs.size());
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t j = 0; j < eqs[i].n_vars(); ++j) {
            g[i].push_back(eqs[i].partial(j));
        }
    }
    return g;
}

// |P(x)| / sum |coefficients| at the unit vector x: a scale-free residual for forms.
inline double relative_residual(const Polynomial<Complex> &P, const ComplexPoint &unit_x)
{
    const double s = P.norm1();
    return s == 0 ? 0.0 : std::abs(P.eval<Complex>(unit_x)) / s;
}

} // namespace detail

// Restriction t -> P(q1 + t q2) of a polynomial to a line, as ascending coefficients in t.
struct LineSection {
    ComplexPoint q1, q2;
    std::vector<Complex> restricted;
};

inline LineSection restrict_to_line(const Polynomial<Complex> &P, ComplexPoint q1, ComplexPoint q2)
{
    if (q1.size() != P.n_vars() || q2.size() != P.n_vars()) {
        throw usage_error("line points have the wrong number of coordinates");
    }
    const auto forms = detail::affine_parametrization(q1, {q2});
    const auto r = compose(P, std::span<const Polynomial<Complex>>(forms));
    LineSection s{std::move(q1), std::move(q2), {}};
    s.restricted.assign(std::size_t(std::max(P.total_degree(), 0)) + 1, Complex(0));
    for (const auto &t : r.terms()) {
        s.restricted[t.mono[0]] = t.coeff;
    }
    return s;
}

struct CriticalPoint {
    // Unit-norm representative of the critical ray.
    ComplexPoint point;
    std::size_t line = 0;
    // |J(point)| and the contract bound 1e-8 * 2^deg J it must stay under.
    double jdet_residual = 0;
    double jdet_bound = 0;
    // |q1 + t q2| / (|q1| + |t||q2|); tiny values mean the line passed through the origin.
    double relative_norm = 1;
};

inline constexpr double critical_residual_tol = 1e-8;

// Roots of J restricted to `lines` random lines spanned by two Gaussian points. Every line
// contributes deg J points counted with multiplicity. Roots with |t| > 1 are polished on the
// reversed polynomial, i.e. as s q1 + q2 with s = 1/t, and every point is then projected
// onto J = 0 with a few minimum-norm Newton steps in the full space.
inline std::vector<CriticalPoint> critical_points_on_lines(const Polynomial<Complex> &J, std::size_t lines,
                                                           std::uint64_t seed)
{
    if (J.is_zero()) {
        throw usage_error("critical_points_on_lines: the Jacobian determinant vanishes identically");
    }
    const std::size_t n = J.n_vars();
    const int D = J.total_degree();
    std::vector<CriticalPoint> out;
    if (D == 0) {
        return out;
    }
    const double bound = critical_residual_tol * std::pow(2.0, D);
    const std::vector<Polynomial<Complex>> eqs{J};
    const auto grads = detail::gradients(eqs);
    for (std::size_t l = 0; l < lines; ++l) {
        Rng rng(derive_seed(seed, l));
        std::vector<Complex> roots;
        LineSection sec;
        for (int attempt = 0;; ++attempt) {
            if (attempt == 50) {
                throw computation_error("critical_points_on_lines: could not find a usable line");
            }
            auto q1 = detail::gaussian_point(rng, n);
            auto q2 = detail::gaussian_point(rng, n);
            Complex inner = 0;
            for (std::size_t i = 0; i < n; ++i) {
                inner += std::conj(q1[i]) * q2[i];
            }
            const double n1 = detail::norm(q1), n2 = detail::norm(q2);
            if (n1 * n1 * n2 * n2 - std::norm(inner) <= 1e-6 * n1 * n1 * n2 * n2) {
                continue;
            }
            sec = restrict_to_line(J, std::move(q1), std::move(q2));
            double cmax = 0;
            for (const auto &c : sec.restricted) {
                cmax = std::max(cmax, std::abs(c));
            }
            if (std::abs(sec.restricted.back()) <= 1e-10 * cmax) {
                continue;
            }
            try {
                roots = durand_kerner(sec.restricted);
            } catch (const root_convergence_error &) {
                continue;
            }
            break;
        }
        std::vector<Complex> reversed(sec.restricted.rbegin(), sec.restricted.rend());
        for (auto t : roots) {
            ComplexPoint raw(n);
            double scale = 0;
            if (std::abs(t) <= 1.0) {
                t = detail::newton_polish(sec.restricted, t);
                for (std::size_t i = 0; i < n; ++i) {
                    raw[i] = sec.q1[i] + t * sec.q2[i];
                }
                scale = detail::norm(sec.q1) + std::abs(t) * detail::norm(sec.q2);
            } else {
                const Complex s = detail::newton_polish(reversed, 1.0 / t);
                for (std::size_t i = 0; i < n; ++i) {
                    raw[i] = s * sec.q1[i] + sec.q2[i];
                }
                scale = std::abs(s) * detail::norm(sec.q1) + detail::norm(sec.q2);
            }
            CriticalPoint cp;
            cp.relative_norm = detail::norm(raw) / scale;
            cp.point = detail::normalized(std::move(raw));
            // Near-tangent lines leave the root at sqrt(eps) accuracy; J itself is smooth there.
            detail::project_onto_zeros(eqs, grads, cp.point, 3);
            cp.point = detail::normalized(std::move(cp.point));
            cp.line = l;
            cp.jdet_residual = std::abs(J.eval<Complex>(cp.point));
            cp.jdet_bound = bound;
            out.push_back(std::move(cp));
        }
    }
    return out;
}

inline std::vector<CriticalPoint> critical_points_on_lines(const HomogeneousMap<Complex> &F, std::size_t lines,
                                                           std::uint64_t seed)
{
    return critical_points_on_lines(jdet(F), lines, seed);
}

struct PlaneSolution {
    ComplexPoint point;
    std::size_t plane = 0;
    double residual_p = 0;
    double residual_q = 0;
};

struct PlaneSearchOptions {
    double residual_tol = 1e-9;
    int newton_iterations = 40;
};

struct PlaneSearchReport {
    std::vector<PlaneSolution> points;
    std::size_t planes = 0;
    std::size_t candidates = 0;
    std::size_t rejected_residual = 0;
    std::size_t rejected_duplicate = 0;
    std::size_t rejected_not_cusp = 0;
    std::size_t partial_root_sets = 0;
    int resultant_degree = 0;
    std::size_t tower_index = 0;
};

namespace detail
{

// Bivariate polynomial in (u, v) viewed as sum_j c_j(u) v^j.
struct BivariateTable {
    std::vector<std::vector<Complex>> by_v;

    explicit BivariateTable(const Polynomial<Complex> &p)
    {
        by_v.assign(p.degree_in(1) + 1, std::vector<Complex>(p.degree_in(0) + 1, Complex(0)));
        for (const auto &t : p.terms()) {
            by_v[t.mono[1]][t.mono[0]] = t.coeff;
        }
    }

    std::vector<Complex> at_u(Complex u) const
    {
        std::vector<Complex> c;
        c.reserve(by_v.size());
        for (const auto &row : by_v) {
            c.push_back(horner(row, u).value);
        }
        return c;
    }
};

inline std::vector<Complex> trim_trailing(std::vector<Complex> c, double rel)
{
    double cmax = 0;
    for (const auto &x : c) {
        cmax = std::max(cmax, std::abs(x));
    }
    while (c.size() > 1 && std::abs(c.back()) <= rel * cmax) {
        c.pop_back();
    }
    return c;
}

inline std::vector<Complex> roots_or_partial(const std::vector<Complex> &coeffs, std::size_t &partial_count)
{
    if (coeffs.size() < 2) {
        return {};
    }
    try {
        return durand_kerner(coeffs);
    } catch (const root_convergence_error &e) {
        ++partial_count;
        return e.partial_roots();
    }
}

// Coefficients of R(u) = Res_v(P(u, .), Q(u, .)) by evaluation on a circle of radius 1 at
// N-th roots of unity (N a power of two above the Bezout bound) and an inverse DFT.
inline std::vector<Complex> resultant_in_u(const BivariateTable &P, const BivariateTable &Q, int degree_bound)
{
    std::size_t N = 1;
    while (N < std::size_t(degree_bound) + 1) {
        N <<= 1;
    }
    std::vector<Complex> values(N);
    for (std::size_t j = 0; j < N; ++j) {
        const Complex u = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(N));
        const auto a = P.at_u(u);
        const auto b = Q.at_u(u);
        values[j] = determinant(sylvester_matrix<Complex>(a, b));
    }
    std::vector<Complex> coeffs(std::size_t(degree_bound) + 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Complex acc = 0;
        for (std::size_t j = 0; j < N; ++j) {
            acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * double((j * k) % N) / double(N));
        }
        coeffs[k] = acc / double(N);
    }
    return coeffs;
}

} // namespace detail

// Common zeros of two forms P, Q on random affine 2-planes x = q0 + u q1 + v q2: v is
// eliminated with the Sylvester resultant, the univariate R(u) is solved, v is recovered
// from P(u, .) = 0 with Q as the selector, and each pair is Newton-polished on the 2x2
// restricted system. Only points with both scale-free residuals below residual_tol survive.
inline PlaneSearchReport plane_intersections(const Polynomial<Complex> &P, const Polynomial<Complex> &Q,
                                             std::size_t planes, std::uint64_t seed,
                                             const PlaneSearchOptions &opt = {})
{
    if (P.n_vars() != Q.n_vars()) {
        throw usage_error("plane_intersections: polynomials live in different rings");
    }
    const std::size_t n = P.n_vars();
    PlaneSearchReport rep;
    rep.planes = planes;
    if (P.is_zero() || Q.is_zero()) {
        return rep;
    }
    for (std::size_t pl = 0; pl < planes; ++pl) {
        Rng rng(derive_seed(seed, pl));
        const auto q0 = detail::gaussian_point(rng, n);
        const std::vector<ComplexPoint> dirs{detail::gaussian_point(rng, n), detail::gaussian_point(rng, n)};
        const auto forms = detail::affine_parametrization(q0, dirs);
        const auto Pr = compose(P, std::span<const Polynomial<Complex>>(forms));
        const auto Qr = compose(Q, std::span<const Polynomial<Complex>>(forms));
        if (Pr.total_degree() < 1 || Qr.total_degree() < 1) {
            continue;
        }
        const detail::BivariateTable Pt(Pr), Qt(Qr);
        const int bound = Pr.total_degree() * Qr.total_degree();
        rep.resultant_degree = std::max(rep.resultant_degree, bound);
        const auto R = detail::trim_trailing(detail::resultant_in_u(Pt, Qt, bound), 1e-13);
        const auto us = detail::roots_or_partial(R, rep.partial_root_sets);

        const Polynomial<Complex> Pu = Pr.partial(0), Pv = Pr.partial(1), Qu = Qr.partial(0), Qv = Qr.partial(1);
        const double qscale = std::max(Qr.norm1(), 1e-300);
        for (const Complex u0 : us) {
            const auto vpoly = detail::trim_trailing(Pt.at_u(u0), 1e-13);
            const auto vs = detail::roots_or_partial(vpoly, rep.partial_root_sets);
            if (vs.empty()) {
                continue;
            }
            ++rep.candidates;
            Complex v0 = vs.front();
            double best = std::numeric_limits<double>::infinity();
            for (const Complex v : vs) {
                const std::vector<Complex> uv{u0, v};
                const double r = std::abs(Qr.eval<Complex>(uv)) / qscale;
                if (r < best) {
                    best = r;
                    v0 = v;
                }
            }
            Complex u = u0, v = v0;
            for (int it = 0; it < opt.newton_iterations; ++it) {
                const std::vector<Complex> uv{u, v};
                const Complex f1 = Pr.eval<Complex>(uv), f2 = Qr.eval<Complex>(uv);
                const Complex a = Pu.eval<Complex>(uv), b = Pv.eval<Complex>(uv);
                const Complex c = Qu.eval<Complex>(uv), d = Qv.eval<Complex>(uv);
                const Complex det = a * d - b * c;
                if (det == Complex(0)) {
                    break;
                }
                const Complex du = (d * f1 - b * f2) / det;
                const Complex dv = (a * f2 - c * f1) / det;
                u -= du;
                v -= dv;
                if (std::abs(du) + std::abs(dv) <= 1e-15 * (1.0 + std::abs(u) + std::abs(v))) {
                    break;
                }
            }
            if (!std::isfinite(std::abs(u)) || !std::isfinite(std::abs(v))) {
                ++rep.rejected_residual;
                continue;
            }
            ComplexPoint x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = q0[i] + u * dirs[0][i] + v * dirs[1][i];
            }
            if (detail::norm(x) == 0.0) {
                ++rep.rejected_residual;
                continue;
            }
            PlaneSolution sol;
            sol.point = detail::normalized(std::move(x));
            sol.plane = pl;
            sol.residual_p = detail::relative_residual(P, sol.point);
            sol.residual_q = detail::relative_residual(Q, sol.point);
            if (!(sol.residual_p < opt.residual_tol) || !(sol.residual_q < opt.residual_tol)) {
                ++rep.rejected_residual;
                continue;
            }
            const bool duplicate = std::any_of(rep.points.begin(), rep.points.end(), [&](const PlaneSolution &o) {
                Complex inner = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    inner += std::conj(o.point[i]) * sol.point[i];
                }
                return o.plane == pl && std::abs(inner) > 1.0 - 1e-10;
            });
            if (duplicate) {
                ++rep.rejected_duplicate;
                continue;
            }
            rep.points.push_back(std::move(sol));
        }
    }
    return rep;
}

inline constexpr double cusp_level_tol = 1e-8;

// Cusp candidates: common zeros of J and the first J_{1,i*} that is not identically zero.
// Such zeros also include fold points where only J_{1,i*} happens to vanish, so every
// candidate is projected onto the full system {J, J_{1,1}, ..., J_{1,n}} and kept only if all
// J_{1,i} then vanish (scale-free residual below cusp_level_tol).
inline PlaneSearchReport cusp_points(const MorinTower<Complex> &tower, std::size_t planes, std::uint64_t seed,
                                     const PlaneSearchOptions &opt = {})
{
    if (tower.n() != 4) {
        throw usage_error("cusp_points is implemented for maps C^4 -> C^4");
    }
    const auto &lvl = tower.level(1);
    std::size_t index = lvl.size();
    for (std::size_t i = 0; i < lvl.size(); ++i) {
        if (!lvl[i].is_zero()) {
            index = i;
            break;
        }
    }
    PlaneSearchReport rep;
    rep.planes = planes;
    if (index == lvl.size() || planes == 0) {
        return rep;
    }
    rep = plane_intersections(tower.jdet(), lvl[index], planes, seed, opt);
    rep.tower_index = index;
    std::vector<Polynomial<Complex>> eqs{tower.jdet()};
    for (const auto &g : lvl) {
        if (!g.is_zero()) {
            eqs.push_back(g);
        }
    }
    const auto grads = detail::gradients(eqs);
    std::vector<PlaneSolution> kept;
    for (auto &s : rep.points) {
        detail::project_onto_zeros(eqs, grads, s.point, 8);
        s.point = detail::normalized(std::move(s.point));
        s.residual_p = detail::relative_residual(tower.jdet(), s.point);
        s.residual_q = detail::relative_residual(lvl[index], s.point);
        double worst = 0;
        for (const auto &g : lvl) {
            worst = std::max(worst, detail::relative_residual(g, s.point));
        }
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const PlaneSolution &o) {
            Complex inner = 0;
            for (std::size_t i = 0; i < s.point.size(); ++i) {
                inner += std::conj(o.point[i]) * s.point[i];
            }
            return o.plane == s.plane && std::abs(inner) > 1.0 - 1e-10;
        });
        if (duplicate) {
            ++rep.rejected_duplicate;
        } else if (worst >= cusp_level_tol) {
            ++rep.rejected_not_cusp;
        } else if (!(s.residual_p < opt.residual_tol) || !(s.residual_q < opt.residual_tol)) {
            ++rep.rejected_residual;
        } else {
            kept.push_back(std::move(s));
        }
    }
    rep.points = std::move(kept);
    return rep;
}

inline PlaneSearchReport cusp_points(const HomogeneousMap<Complex> &F, std::size_t planes, std::uint64_t seed,
                                     const PlaneSearchOptions &opt = {})
{
    const MorinTower<Complex> tower{GeneralMap<Complex>(F)};
    return cusp_points(tower, planes, seed, opt);
}

struct SurveyOptions {
    ClassifyOptions classify;
    double vanishing_tol = default_vanishing_tol;
    // Points whose line passed within this relative distance of the origin are excluded.
    double origin_tol = 1e-6;
    unsigned threads = 0;
};

struct SurveyPoint {
    ComplexPoint point;
    std::size_t map = 0;
    std::size_t line = 0;
    SingularityClass verdict;
    RayMultiplicity ray;
    double jdet_residual = 0;
    double jdet_bound = 0;
    bool at_origin = false;
    // Same verdict at 10*tol and tol/10.
    bool stable = true;
};

struct SurveyReport {
    DegreeTuple degrees;
    std::uint64_t seed = 0;
    std::size_t maps = 0;
    std::size_t lines_sampled = 0;
    std::size_t points_found = 0;
    std::map<std::string, std::size_t> histogram;
    bool menu_check = false;
    std::size_t off_origin = 0;
    std::size_t outside_menu = 0;
    std::size_t unstable = 0;
    std::vector<SurveyPoint> points;

    double outside_menu_fraction() const { return off_origin == 0 ? 0.0 : double(outside_menu) / double(off_origin); }
    double fraction(const std::string &label) const
    {
        const auto it = histogram.find(label);
        return points_found == 0 || it == histogram.end() ? 0.0 : double(it->second) / double(points_found);
    }
};

inline bool in_generic_menu(const SingularityClass &c) { return c.tag == SingularityClass::Tag::morin && c.k <= 3; }

namespace detail
{

inline std::vector<SurveyPoint> survey_one(const HomogeneousMap<Complex> &F, std::size_t m, std::size_t lines,
                                           std::uint64_t line_seed, const SurveyOptions &opt)
{
    std::vector<SurveyPoint> out;
    const MorinTower<Complex> tower{GeneralMap<Complex>(F)};
    if (tower.jdet().is_zero()) {
        return out;
    }
    const auto crit = critical_points_on_lines(tower.jdet(), lines, line_seed);
    ClassifyOptions loose = opt.classify, tight = opt.classify;
    loose.tol *= 10;
    tight.tol /= 10;
    for (const auto &cp : crit) {
        SurveyPoint sp;
        sp.point = cp.point;
        sp.map = m;
        sp.line = cp.line;
        sp.jdet_residual = cp.jdet_residual;
        sp.jdet_bound = cp.jdet_bound;
        sp.at_origin = cp.relative_norm < opt.origin_tol;
        sp.verdict = classify(tower, std::span<const Complex>(sp.point), opt.classify);
        sp.stable = classify(tower, std::span<const Complex>(sp.point), loose) == sp.verdict
                    && classify(tower, std::span<const Complex>(sp.point), tight) == sp.verdict;
        sp.ray = ray_multiplicity(F, std::span<const Complex>(sp.point), opt.vanishing_tol);
        out.push_back(std::move(sp));
    }
    return out;
}

inline void collect(SurveyReport &rep, std::vector<std::vector<SurveyPoint>> &per_map)
{
    for (auto &pts : per_map) {
        for (auto &sp : pts) {
            ++rep.histogram[sp.verdict.label()];
            if (!sp.stable) {
                ++rep.unstable;
            }
            if (!sp.at_origin) {
                ++rep.off_origin;
                if (rep.menu_check && !in_generic_menu(sp.verdict)) {
                    ++rep.outside_menu;
                }
            }
            rep.points.push_back(std::move(sp));
        }
    }
    rep.points_found = rep.points.size();
}

} // namespace detail

// Random float maps of the given degrees, critical points on random lines for each, every
// point classified and annotated with its ray multiplicity. Each map is an independent task
// with its own derived seed; results are merged in map order, so output is deterministic.
inline SurveyReport survey(const DegreeTuple &degrees, std::size_t maps, std::size_t lines, std::uint64_t seed,
                           const SurveyOptions &opt = {})
{
    SurveyReport rep;
    rep.degrees = degrees;
    rep.seed = seed;
    rep.maps = maps;
    rep.lines_sampled = maps * lines;
    rep.menu_check = degrees.size() == 4;

    std::vector<std::vector<SurveyPoint>> per_map(maps);
    const unsigned threads = opt.threads > 0 ? opt.threads : worker_threads();
    parallel_for(maps, threads, [&](std::size_t m) {
        const auto F = random_map<Complex>(degrees, derive_seed(seed, 2 * m));
        per_map[m] = detail::survey_one(F, m, lines, derive_seed(seed, 2 * m + 1), opt);
    });
    detail::collect(rep, per_map);
    return rep;
}

// The same survey on one given map (reported as map 0).
inline SurveyReport survey(const HomogeneousMap<Complex> &F, std::size_t lines, std::uint64_t seed,
                           const SurveyOptions &opt = {})
{
    SurveyReport rep;
    rep.degrees = F.degrees();
    rep.seed = seed;
    rep.maps = 1;
    rep.lines_sampled = lines;
    rep.menu_check = F.n() == 4;
    std::vector<std::vector<SurveyPoint>> per_map{detail::survey_one(F, 0, lines, derive_seed(seed, 1), opt)};
    detail::collect(rep, per_map);
    return rep;
}

} // namespace morin

#endif
