#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <morin/census.hpp>
#include <morin/json_io.hpp>
#include <morin/map_model.hpp>
#include <morin/morin.hpp>
#include <morin/properness.hpp>
#include <morin/sampler.hpp>

using namespace morin;

namespace
{

struct Args {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    double tol = -1;
    std::string degrees;
    std::string kind = "rational";
    std::string map;
    std::string point;
    int kmax = default_k_max;
    std::size_t samples = 2000;
    std::size_t maps = 10;
    std::size_t lines = 20;
};

DegreeTuple parse_degrees(const std::string &text)
{
    if (text.empty()) {
        throw usage_error("--degrees is required");
    }
    std::vector<int> values;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v < 1) {
            throw usage_error("malformed degree list '" + text + "': expected comma-separated positive integers");
        }
        values.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return DegreeTuple(values);
}

// Splits on commas outside parentheses, so complex entries "(re,im)" stay whole.
std::vector<std::string> split_point(const std::string &text)
{
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            --depth;
        }
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

template <class K>
std::vector<K> parse_point(const std::string &text, std::size_t n)
{
    if (text.empty()) {
        throw usage_error("--point is required");
    }
    const auto parts = split_point(text);
    if (parts.size() != n) {
        throw usage_error("point has " + std::to_string(parts.size()) + " coordinates but the map has n = "
                          + std::to_string(n));
    }
    std::vector<K> p;
    for (const auto &s : parts) {
        p.push_back(field_traits<K>::parse(s));
    }
    return p;
}

std::string degrees_text(const DegreeTuple &d)
{
    std::string s;
    for (int v : d.values()) {
        s += (s.empty() ? "" : ",") + std::to_string(v);
    }
    return "(" + s + ")";
}

std::string counts_text(const CensusReport &r)
{
    std::ostringstream os;
    os << "degrees " << degrees_text(r.degrees) << ": " << tag_name(r.eligibility.tag) << "\n";
    for (std::size_t i = 0; i < 6; ++i) {
        os << "  #" << count_names[i] << " = " << r.counts[i].get_str() << "\n";
    }
    for (const auto &w : r.warnings) {
        os << "  warning: " << w << "\n";
    }
    return os.str();
}

std::string survey_text(const SurveyReport &r)
{
    std::ostringstream os;
    os << "survey " << degrees_text(r.degrees) << ": " << r.maps << " maps, " << r.lines_sampled << " lines, "
       << r.points_found << " points\n";
    for (const auto &[k, v] : r.histogram) {
        os << "  " << k << ": " << v << "\n";
    }
    os << "  outside menu: " << r.outside_menu << " of " << r.off_origin << " off-origin points\n";
    os << "  unstable: " << r.unstable << "\n";
    return os.str();
}

struct Output {
    json doc;
    std::string text;
};

Output run_gen(const Args &a)
{
    const auto degrees = parse_degrees(a.degrees);
    if (parse_kind(a.kind) == CoefficientKind::rational) {
        return {map_to_json(random_map<Rational>(degrees, a.seed)), {}};
    }
    return {map_to_json(random_map<Complex>(degrees, a.seed)), {}};
}

Output run_gate(const Args &a)
{
    const auto v = eligibility_gate(parse_degrees(a.degrees));
    std::string text(tag_name(v.tag));
    if (!v.witness.empty()) {
        text += " (" + v.witness + ")";
    }
    return {to_json(v), text + "\n"};
}

Output run_classify(const Args &a)
{
    if (a.map.empty()) {
        throw usage_error("--map is required");
    }
    if (a.kmax < 1 || a.kmax > max_tower_levels) {
        throw usage_error("--kmax must be between 1 and " + std::to_string(max_tower_levels));
    }
    ClassifyOptions opt;
    opt.k_max = a.kmax;
    if (a.tol >= 0) {
        opt.tol = a.tol;
    }
    const auto F = read_general_map_file(a.map);
    const auto c = std::visit(
        [&](const auto &G) {
            using K = typename std::decay_t<decltype(G)>::field_type;
            const auto p = parse_point<K>(a.point, G.n());
            return classify(morin_tower_of(G, opt.k_max), p, opt);
        },
        F);
    return {to_json(c), c.name() + "\n"};
}

Output run_proper(const Args &a)
{
    if (a.map.empty()) {
        throw usage_error("--map is required");
    }
    const auto F = read_map_file(a.map);
    PropernessVerdict v;
    if (const auto *Q = std::get_if<HomogeneousMap<Rational>>(&F)) {
        MacaulayOptions opt;
        opt.seed = a.seed;
        opt.falsifier_samples = a.samples;
        v = macaulay_resultant_certificate(*Q, opt);
    } else {
        v = falsifier_verdict(std::get<HomogeneousMap<Complex>>(F), a.samples, a.seed);
    }
    return {to_json(v), std::string(tag_name(v.tag)) + ": " + v.certificate + "\n"};
}

Output run_census(const Args &a)
{
    const auto r = census(parse_degrees(a.degrees));
    return {to_json(r), counts_text(r)};
}

Output run_survey(const Args &a)
{
    SurveyOptions opt;
    if (a.tol >= 0) {
        opt.classify.tol = a.tol;
    }
    SurveyReport r;
    if (!a.map.empty()) {
        if (!a.degrees.empty()) {
            throw usage_error("survey takes either --degrees or --map, not both");
        }
        const auto F = read_map_file(a.map);
        const auto G = std::holds_alternative<HomogeneousMap<Complex>>(F)
                           ? std::get<HomogeneousMap<Complex>>(F)
                           : convert<Complex>(std::get<HomogeneousMap<Rational>>(F));
        r = survey(G, a.lines, a.seed, opt);
    } else {
        r = survey(parse_degrees(a.degrees), a.maps, a.lines, a.seed, opt);
    }
    return {to_json(r), survey_text(r)};
}

int emit(const Args &a, const Output &o)
{
    std::string body;
    if (a.format == "json") {
        body = o.doc.dump() + "\n";
    } else {
        body = o.text.empty() ? o.doc.dump(2) + "\n" : o.text;
    }
    if (a.out.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream f(a.out);
    if (!f || !(f << body)) {
        throw usage_error("cannot write '" + a.out + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    Args a;
    CLI::App app{"Morin singularities of polynomial maps C^n -> C^n"};
    app.require_subcommand(1);
    app.add_option("--seed", a.seed, "64-bit seed")->default_val(0);
    app.add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", a.out, "write the document here instead of stdout");
    app.add_option("--tol", a.tol, "classification tolerance");

    auto *gen = app.add_subcommand("gen", "random homogeneous map of the given degrees");
    gen->add_option("--degrees", a.degrees)->required();
    gen->add_option("--kind", a.kind)->check(CLI::IsMember({"rational", "complex"}));

    auto *gate = app.add_subcommand("gate", "eligibility of a degree tuple in dimension 4");
    gate->add_option("--degrees", a.degrees)->required();

    auto *cls = app.add_subcommand("classify", "classify a point of a map");
    cls->add_option("--map", a.map, "map file, - for stdin")->required();
    cls->add_option("--point", a.point)->required();
    cls->add_option("--kmax", a.kmax);

    auto *proper = app.add_subcommand("proper", "certify that the map has no nonzero common zero");
    proper->add_option("--map", a.map, "map file, - for stdin")->required();
    proper->add_option("--samples", a.samples);

    auto *cen = app.add_subcommand("census", "counts of the isolated multi-germs");
    cen->add_option("--degrees", a.degrees)->required();

    auto *sur = app.add_subcommand("survey", "classify critical points of random maps on random lines");
    sur->add_option("--degrees", a.degrees);
    sur->add_option("--map", a.map, "survey this map file instead of random maps");
    sur->add_option("--maps", a.maps);
    sur->add_option("--lines", a.lines);

    // Global flags are accepted after the subcommand as well.
    for (auto *sub : {gen, gate, cls, proper, cen, sur}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "morin: " << e.what() << "\n";
        return 1;
    }

    try {
        Output o;
        if (*gen) {
            o = run_gen(a);
        } else if (*gate) {
            o = run_gate(a);
        } else if (*cls) {
            o = run_classify(a);
        } else if (*proper) {
            o = run_proper(a);
        } else if (*cen) {
            o = run_census(a);
        } else {
            if (a.degrees.empty() && a.map.empty()) {
                throw usage_error("survey needs --degrees or --map");
            }
            o = run_survey(a);
        }
        return emit(a, o);
    } catch (const usage_error &e) {
        std::cerr << "morin: " << e.what() << "\n";
        return 1;
    } catch (const computation_error &e) {
        std::cerr << "morin: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "morin: internal error: " << e.what() << "\n";
        return 2;
    }
}
