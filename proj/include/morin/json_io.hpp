#ifndef MORIN_JSON_IO_HPP
#define MORIN_JSON_IO_HPP

#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <morin/census.hpp>
#include <morin/error.hpp>
#include <morin/field.hpp>
#include <morin/map_model.hpp>
#include <morin/morin.hpp>
#include <morin/properness.hpp>
#include <morin/sampler.hpp>

namespace morin
{

using json = nlohmann::json;

// A map read from a file, in whichever coefficient kind the file declares.
using AnyMap = std::variant<HomogeneousMap<Rational>, HomogeneousMap<Complex>>;

inline CoefficientKind kind_of(const AnyMap &m)
{
    return std::holds_alternative<HomogeneousMap<Rational>>(m) ? CoefficientKind::rational : CoefficientKind::complex;
}

// Map file:
//   {"n": 4, "degrees": [..], "kind": "rational"|"complex",
//    "components": [[{"exps": [..], "coeff": "3/2"}, ...], ...]}
template <class K>
json map_to_json(const HomogeneousMap<K> &F)
{
    json comps = json::array();
    for (const auto &f : F.components()) {
        json terms = json::array();
        for (const auto &t : f.terms()) {
            std::vector<unsigned> exps(F.n());
            for (std::size_t i = 0; i < F.n(); ++i) {
                exps[i] = t.mono[i];
            }
            terms.push_back({{"exps", exps}, {"coeff", field_traits<K>::to_string(t.coeff)}});
        }
        comps.push_back(std::move(terms));
    }
    return {{"n", F.n()},
            {"degrees", F.degrees().values()},
            {"kind", is_exact_v<K> ? "rational" : "complex"},
            {"components", std::move(comps)}};
}

inline json map_to_json(const AnyMap &m)
{
    return std::visit([](const auto &F) { return map_to_json(F); }, m);
}

namespace detail
{

template <class T>
T get_field(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw usage_error(std::string("map file: missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw usage_error(std::string("map file: bad field '") + key + "': " + e.what());
    }
}

template <class K>
std::vector<Polynomial<K>> components_from_json(const json &j, std::size_t n)
{
    const auto &comps = j.at("components");
    if (!comps.is_array() || comps.size() != n) {
        throw usage_error("map file: expected " + std::to_string(n) + " components");
    }
    std::vector<Polynomial<K>> polys;
    for (const auto &c : comps) {
        if (!c.is_array()) {
            throw usage_error("map file: a component must be an array of terms");
        }
        std::vector<typename Polynomial<K>::Term> terms;
        for (const auto &t : c) {
            const auto exps = get_field<std::vector<unsigned>>(t, "exps");
            if (exps.size() != n) {
                throw usage_error("map file: exponent vector has the wrong length");
            }
            terms.push_back({Monomial(std::span<const unsigned>(exps)),
                             field_traits<K>::parse(get_field<std::string>(t, "coeff"))});
        }
        polys.emplace_back(n, std::move(terms));
    }
    return polys;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream file;
    std::istream *in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) {
            throw usage_error("cannot read map file '" + path + "'");
        }
        in = &file;
    }
    json j;
    try {
        *in >> j;
    } catch (const json::exception &e) {
        throw usage_error("map file '" + path + "' is not valid JSON");
    }
    return j;
}

} // namespace detail

inline AnyMap map_from_json(const json &j)
{
    const auto n = detail::get_field<std::size_t>(j, "n");
    const DegreeTuple degrees(detail::get_field<std::vector<int>>(j, "degrees"));
    if (degrees.size() != n) {
        throw usage_error("map file: 'n' disagrees with the degree list");
    }
    (void)detail::get_field<json>(j, "components");
    if (parse_kind(detail::get_field<std::string>(j, "kind")) == CoefficientKind::rational) {
        return HomogeneousMap<Rational>(degrees, detail::components_from_json<Rational>(j, n));
    }
    return HomogeneousMap<Complex>(degrees, detail::components_from_json<Complex>(j, n));
}

using AnyGeneralMap = std::variant<GeneralMap<Rational>, GeneralMap<Complex>>;

// Same file format; "degrees" is not consulted, so non-homogeneous germs load too.
inline AnyGeneralMap general_map_from_json(const json &j)
{
    const auto n = detail::get_field<std::size_t>(j, "n");
    (void)detail::get_field<json>(j, "components");
    if (parse_kind(detail::get_field<std::string>(j, "kind")) == CoefficientKind::rational) {
        return GeneralMap<Rational>(detail::components_from_json<Rational>(j, n));
    }
    return GeneralMap<Complex>(detail::components_from_json<Complex>(j, n));
}

// "-" reads standard input.
inline AnyMap read_map_file(const std::string &path) { return map_from_json(detail::read_json_file(path)); }

inline AnyGeneralMap read_general_map_file(const std::string &path)
{
    return general_map_from_json(detail::read_json_file(path));
}

inline json complex_to_json(const Complex &z) { return field_traits<Complex>::to_string(z); }

inline json point_to_json(const std::vector<Complex> &p)
{
    json a = json::array();
    for (const auto &z : p) {
        a.push_back(complex_to_json(z));
    }
    return a;
}

inline json to_json(const EligibilityVerdict &v)
{
    json j{{"tag", tag_name(v.tag)}};
    if (!v.witness.empty()) {
        j["witness"] = v.witness;
    }
    return j;
}

inline json to_json(const SingularityClass &c)
{
    json j{{"class", c.name()}};
    if (c.tag == SingularityClass::Tag::morin) {
        j["k"] = c.k;
    }
    j["diagnostics"] = {{"jdet_abs", c.diagnostics.jdet_abs},
                        {"level_max", c.diagnostics.level_max},
                        {"corank", c.diagnostics.corank},
                        {"tol", c.diagnostics.tol},
                        {"exact", c.diagnostics.exact}};
    return j;
}

inline json to_json(const PropernessVerdict &v)
{
    json j{{"verdict", tag_name(v.tag)}, {"certificate", v.certificate}};
    if (v.witness) {
        j["witness"] = point_to_json(*v.witness);
    }
    return j;
}

inline json to_json(const CensusReport &r)
{
    auto str = [](const Integer &v) -> json {
        if (v.fits_slong_p()) {
            return v.get_si();
        }
        return v.get_str();
    };
    json c = json::array();
    for (const auto &v : r.c) {
        c.push_back(str(v));
    }
    json counts = json::object();
    for (std::size_t i = 0; i < 6; ++i) {
        const auto &v = r.counts[i];
        counts[count_names[i]] = v.get_den() == 1 ? str(v.get_num()) : json(v.get_str());
    }
    json j{{"degrees", r.degrees.values()},
           {"eligibility", to_json(r.eligibility)},
           {"c", c},
           {"s",
            {{"s0", str(r.s.s0)},
             {"s1", str(r.s.s1)},
             {"s2", str(r.s.s2)},
             {"s3", str(r.s.s3)},
             {"s01", str(r.s.s01)},
             {"s11", str(r.s.s11)},
             {"s001", str(r.s.s001)}}},
           {"counts", counts}};
    if (!r.warnings.empty()) {
        j["warnings"] = r.warnings;
    }
    return j;
}

inline json ray_to_json(const RayMultiplicity &r) { return r.infinite() ? json("infinite") : json(*r.value); }

inline json to_json(const SurveyReport &r)
{
    json points = json::array();
    for (const auto &p : r.points) {
        json rec{{"point", point_to_json(p.point)},
                 {"map", p.map},
                 {"line", p.line},
                 {"class", p.verdict.name()},
                 {"ray_multiplicity", ray_to_json(p.ray)},
                 {"residuals", {{"jdet", p.jdet_residual}, {"jdet_bound", p.jdet_bound}}},
                 {"at_origin", p.at_origin},
                 {"stable", p.stable}};
        if (p.verdict.tag == SingularityClass::Tag::morin) {
            rec["k"] = p.verdict.k;
        }
        points.push_back(std::move(rec));
    }
    return {{"degrees", r.degrees.values()},
            {"seed", r.seed},
            {"maps", r.maps},
            {"lines_sampled", r.lines_sampled},
            {"points_found", r.points_found},
            {"histogram", r.histogram},
            {"menu_check", r.menu_check},
            {"off_origin", r.off_origin},
            {"outside_menu", r.outside_menu},
            {"outside_menu_fraction", r.outside_menu_fraction()},
            {"unstable", r.unstable},
            {"points", std::move(points)}};
}

} // namespace morin

#endif
