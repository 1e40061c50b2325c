#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <morin/census.hpp>
#include <morin/coordinates.hpp>
#include <morin/map_model.hpp>
#include <morin/morin.hpp>
#include <morin/properness.hpp>
#include <morin/sampler.hpp>

#include "support.hpp"

using namespace morin;
using testing_support::chern_display;
using testing_support::qp;
using testing_support::tex_poly;

namespace
{

// Pinned thresholds.
constexpr int unimodular_changes = 50;
constexpr int graph_trials = 20;
constexpr int proper_maps = 100;
constexpr std::size_t falsifier_samples = 500;
constexpr double fold_fraction_min = 0.99;
constexpr double cusp_residual_max = 1e-9;
constexpr std::size_t cusp_planes = 10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

GeneralMap<Rational> germ(const std::vector<std::string> &comps)
{
    std::vector<Polynomial<Rational>> polys;
    for (const auto &c : comps) {
        polys.push_back(qp(c, comps.size()));
    }
    return GeneralMap<Rational>(polys);
}

Outcome chern_expansion()
{
    const auto s = chern_series();
    int matched = s[0] == symbolic_constant(1) ? 1 : 0;
    for (std::size_t k = 1; k <= 4; ++k) {
        matched += s[k] == tex_poly(chern_display[k - 1]) ? 1 : 0;
    }
    return {matched == 5, std::to_string(matched) + "/5 coefficients equal"};
}

Outcome census_integrality()
{
    std::size_t total = 0, fractional = 0, asymmetric = 0, three_even = 0, eligible = 0, eligible_fractional = 0;
    std::map<std::string, std::size_t> by_count, by_tag;
    for (int a = 1; a <= 9; ++a) {
        for (int b = 1; b <= 9; ++b) {
            for (int c = 1; c <= 9; ++c) {
                for (int d = 1; d <= 9; ++d) {
                    std::vector<int> t{a, b, c, d};
                    const auto r = census(DegreeTuple(t));
                    ++total;
                    const bool is_eligible = r.eligibility.tag == EligibilityVerdict::Tag::eligible_generic;
                    eligible += is_eligible ? 1 : 0;
                    if (!r.integral()) {
                        ++fractional;
                        eligible_fractional += is_eligible ? 1 : 0;
                        ++by_tag[std::string(tag_name(r.eligibility.tag))];
                        const auto evens = std::count_if(t.begin(), t.end(), [](int v) { return v % 2 == 0; });
                        three_even += evens == 3 ? 1 : 0;
                        for (std::size_t i = 0; i < 6; ++i) {
                            if (r.counts[i].get_den() != 1) {
                                ++by_count[count_names[i]];
                            }
                        }
                    }
                    std::sort(t.begin(), t.end());
                    if (census(DegreeTuple(t)).counts != r.counts) {
                        ++asymmetric;
                    }
                }
            }
        }
    }
    std::string detail = std::to_string(total - fractional) + "/" + std::to_string(total) + " tuples integral, "
                         + std::to_string(asymmetric) + " permutation mismatches";
    if (fractional > 0) {
        detail += "; non-integral:";
        for (const auto &[k, v] : by_count) {
            detail += " " + k + "=" + std::to_string(v);
        }
        detail += ", " + std::to_string(three_even) + "/" + std::to_string(fractional) + " have three even degrees,";
        for (const auto &[k, v] : by_tag) {
            detail += " " + k + "=" + std::to_string(v);
        }
        detail += "; eligible tuples integral " + std::to_string(eligible - eligible_fractional) + "/"
                  + std::to_string(eligible);
    }
    return {fractional == 0 && asymmetric == 0, detail};
}

Outcome degenerate_census()
{
    const auto r = census(DegreeTuple{1, 1, 1, 1});
    bool ok = true;
    for (const auto &c : r.c) {
        ok = ok && c == 0;
    }
    for (const auto &v : r.counts) {
        ok = ok && v == 0;
    }
    return {ok, ok ? "c1..c4 and all six counts are 0" : "nonzero value"};
}

Outcome normal_forms()
{
    struct Case {
        const char *name;
        GeneralMap<Rational> F;
        SingularityClass::Tag tag;
        int k;
    };
    const std::vector<Case> cases{
        {"fold", germ({"x1", "x2", "x3", "x4^2"}), SingularityClass::Tag::morin, 1},
        {"cusp", germ({"x1", "x2", "x3", "x4^3 + x1*x4"}), SingularityClass::Tag::morin, 2},
        {"swallowtail", germ({"x1", "x2", "x3", "x4^4 + x1*x4^2 + x2*x4"}), SingularityClass::Tag::morin, 3},
        {"corank 2", germ({"x1", "x2", "x3^2", "x4^2"}), SingularityClass::Tag::corank_ge_2, 0}};
    const std::vector<Rational> origin{0, 0, 0, 0};
    int checked = 0, wrong = 0;
    std::string first_wrong;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        for (int s = 0; s <= unimodular_changes; ++s) {
            auto F = cases[c].F;
            if (s > 0) {
                const std::uint64_t seed = derive_seed(7000 + c, std::uint64_t(s));
                const auto L = random_unimodular(4, derive_seed(seed, 0));
                const auto M = random_unimodular(4, derive_seed(seed, 1));
                const auto src = compose_source<Rational>(F.components(), L.forward);
                F = GeneralMap<Rational>(compose_target<Rational>(M.forward, src));
            }
            const auto v = classify(F, origin);
            ++checked;
            if (v.tag != cases[c].tag || v.k != cases[c].k) {
                if (wrong++ == 0) {
                    first_wrong = std::string(cases[c].name) + " change " + std::to_string(s) + " gave " + v.name();
                }
            }
        }
    }
    std::string detail = std::to_string(checked - wrong) + "/" + std::to_string(checked) + " verdicts as expected";
    if (wrong > 0) {
        detail += " (" + first_wrong + ")";
    }
    return {wrong == 0, detail};
}

Outcome graph_form()
{
    Rng rng(2718);
    int ok = 0, total = 0;
    for (int trial = 0; trial < graph_trials; ++trial) {
        std::vector<Polynomial<Rational>::Term> ts;
        for (int t = 0; t < 6; ++t) {
            Monomial m;
            for (std::size_t v = 0; v < 4; ++v) {
                m.set(v, unsigned(rng.uniform_int(0, v == 3 ? 6 : 2)));
            }
            ts.push_back({m, Rational(rng.uniform_int(-9, 9))});
        }
        const Polynomial<Rational> g(4, ts);
        const MorinTower<Rational> tower(GeneralMap<Rational>({qp("x1"), qp("x2"), qp("x3"), g}), 3);
        for (int r = 1; r <= 3; ++r) {
            ++total;
            ok += tower.level(r)[3] == g.partial(3, unsigned(r + 1)) ? 1 : 0;
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " levels equal d^(r+1)g/dx4^(r+1)"};
}

Outcome generic_properness()
{
    int certified = 0, witnesses = 0;
    for (int m = 0; m < proper_maps; ++m) {
        const auto F = random_map<Rational>(DegreeTuple{2, 2, 2}, derive_seed(4242, std::uint64_t(m)));
        MacaulayOptions opt;
        opt.seed = std::uint64_t(m);
        const auto v = macaulay_resultant_certificate(F, opt);
        certified += v.tag == PropernessVerdict::Tag::proper_certified ? 1 : 0;
        witnesses += sphere_falsifier(F, falsifier_samples, derive_seed(4243, std::uint64_t(m))) ? 1 : 0;
    }
    return {certified == proper_maps && witnesses == 0,
            std::to_string(certified) + "/" + std::to_string(proper_maps) + " certified, falsifier witnesses "
                + std::to_string(witnesses)};
}

Outcome gate_table()
{
    using T = EligibilityVerdict::Tag;
    const std::vector<std::pair<DegreeTuple, T>> rows{{DegreeTuple{2, 3, 5, 7}, T::eligible_generic},
                                                      {DegreeTuple{2, 4, 3, 5}, T::eligible_generic},
                                                      {DegreeTuple{2, 4, 6, 3}, T::hypothesis_fails},
                                                      {DegreeTuple{2, 4, 6, 8}, T::never_finite}};
    int ok = 0;
    for (const auto &[d, tag] : rows) {
        ok += eligibility_gate(d).tag == tag ? 1 : 0;
    }
    return {ok == 4, std::to_string(ok) + "/4 rows"};
}

std::string histogram_text(const SurveyReport &r)
{
    std::string s;
    for (const auto &[k, v] : r.histogram) {
        s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
    }
    return s;
}

Outcome menu_survey()
{
    const auto r = survey(DegreeTuple{2, 2, 2, 2}, 10, 20, 1);
    std::size_t ray_ok = 0;
    for (const auto &p : r.points) {
        ray_ok += !p.ray.infinite() && *p.ray.value == 2 ? 1 : 0;
    }
    const double folds = r.fraction("A1");
    const bool pass = r.points_found > 0 && r.outside_menu == 0 && folds >= fold_fraction_min
                      && ray_ok == r.points_found;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", folds);
    return {pass, std::to_string(r.points_found) + " points (" + histogram_text(r) + "), outside menu "
                      + std::to_string(r.outside_menu) + "/" + std::to_string(r.off_origin) + ", A1 fraction " + buf
                      + ", ray 2 on " + std::to_string(ray_ok) + ", unstable " + std::to_string(r.unstable)};
}

Outcome coprime_rays()
{
    const auto r = survey(DegreeTuple{2, 3, 5, 7}, 10, 20, 1);
    std::size_t ray_ok = 0;
    for (const auto &p : r.points) {
        ray_ok += !p.ray.infinite() && *p.ray.value == 1 ? 1 : 0;
    }
    return {r.points_found > 0 && ray_ok == r.points_found,
            std::to_string(ray_ok) + "/" + std::to_string(r.points_found) + " points with ray multiplicity 1 ("
                + histogram_text(r) + ", unstable " + std::to_string(r.unstable) + ")"};
}

Outcome cusp_hunt()
{
    const auto F = random_map<Complex>(DegreeTuple{3, 3, 3, 3}, 1);
    const MorinTower<Complex> tower{GeneralMap<Complex>(F)};
    const auto rep = cusp_points(tower, cusp_planes, 2);
    std::size_t cusps = 0;
    double worst = 0;
    for (const auto &s : rep.points) {
        worst = std::max({worst, s.residual_p, s.residual_q});
        const auto v = classify(tower, std::span<const Complex>(s.point));
        cusps += v.is_morin(2) && s.residual_p < cusp_residual_max && s.residual_q < cusp_residual_max ? 1 : 0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", worst);
    return {!rep.points.empty() && cusps == rep.points.size(),
            std::to_string(cusps) + "/" + std::to_string(rep.points.size()) + " candidates A2 from "
                + std::to_string(rep.candidates) + " intersections, worst residual " + buf};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"symbolic Chern expansion", chern_expansion},
        {"census integrality and symmetry over {1..9}^4", census_integrality},
        {"census of (1,1,1,1)", degenerate_census},
        {"normal forms under unimodular changes", normal_forms},
        {"graph-form tower identity", graph_form},
        {"generic properness of (2,2,2)", generic_properness},
        {"eligibility gate truth table", gate_table},
        {"survey menu check (2,2,2,2)", menu_survey},
        {"ray multiplicity for (2,3,5,7)", coprime_rays},
        {"cusp hunting (3,3,3,3)", cusp_hunt},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
