#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace
{

using nlohmann::json;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

const std::string err_file = "morin_cli_test.stderr";

Run run(const std::string &args, const std::string &stdin_from = "")
{
    std::string cmd = std::string(MORIN_CLI_PATH) + " " + args + " 2>" + err_file;
    if (!stdin_from.empty()) {
        cmd += " <" + stdin_from;
    }
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, got);
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream e(err_file);
    std::stringstream ss;
    ss << e.rdbuf();
    r.err = ss.str();
    return r;
}

std::string fixture(const std::string &name) { return std::string(MORIN_FIXTURES_DIR) + "/" + name; }

void expect_usage_error(const Run &r)
{
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    ASSERT_FALSE(r.err.empty());
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
}

} // namespace

TEST(Cli, GateNeverFinite)
{
    const auto r = run("gate --degrees 2,4,6,8");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out), json::parse(R"({"tag":"never_finite","witness":"gcd(d1..d4)=2"})"));
}

TEST(Cli, CensusOfLinearMapIsZero)
{
    const auto r = run("census --degrees 1,1,1,1");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["counts"].size(), 6u);
    for (const auto &[k, v] : j["counts"].items()) {
        EXPECT_EQ(v, 0) << k;
    }
}

TEST(Cli, CensusValues)
{
    const auto j = json::parse(run("census --degrees 2,3,5,7").out);
    EXPECT_EQ(j["counts"]["A1_4"], 9669241152LL);
    EXPECT_EQ(j["counts"]["I22"], 1940);
    EXPECT_EQ(j["eligibility"]["tag"], "eligible_generic");
    const auto half = json::parse(run("census --degrees 1,2,2,2").out);
    EXPECT_EQ(half["counts"]["A2_2"], "81/2");
    EXPECT_FALSE(half["warnings"].empty());
}

TEST(Cli, ClassifiesShippedNormalForms)
{
    for (const auto &[file, label] : {std::pair{"fold.json", "A1"}, std::pair{"cusp.json", "A2"},
                                      std::pair{"swallowtail.json", "A3"}, std::pair{"umbilic.json", "corank_ge_2"}}) {
        const auto r = run("classify --map " + fixture(file) + " --point 0,0,0,0");
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(json::parse(r.out)["class"], label) << file;
    }
    const auto off = run("classify --map " + fixture("fold.json") + " --point 1,2,3,1/2");
    EXPECT_EQ(json::parse(off.out)["class"], "regular");
}

TEST(Cli, UsageErrors)
{
    expect_usage_error(run("gate --degrees 2,,3"));
    expect_usage_error(run("gate --degrees 2,0,3,4"));
    expect_usage_error(run("census --degrees two"));
    expect_usage_error(run("classify --map /nonexistent/map.json --point 0,0,0,0"));
    expect_usage_error(run("classify --map " + fixture("fold.json") + " --point 0,0,0"));
    expect_usage_error(run("classify --map " + fixture("fold.json") + " --point 0,0,0,0 --kmax 0"));
    expect_usage_error(run("census --degrees 2,3,5"));
    expect_usage_error(run("frobnicate"));
    expect_usage_error(run(""));
    expect_usage_error(run("proper --map " + fixture("cusp.json")));
}

TEST(Cli, GenRoundTrip)
{
    const auto gen = run("gen --degrees 2,2,2 --seed 8 --out morin_cli_test_map.json");
    ASSERT_EQ(gen.code, 0);
    EXPECT_TRUE(gen.out.empty());
    const auto proper = run("proper --map morin_cli_test_map.json");
    ASSERT_EQ(proper.code, 0) << proper.err;
    EXPECT_EQ(json::parse(proper.out)["verdict"], "proper_certified");

    const auto piped = run("proper --map -", "morin_cli_test_map.json");
    EXPECT_EQ(piped.out, proper.out);

    const auto cls = run("classify --map morin_cli_test_map.json --point 1,0,0");
    ASSERT_EQ(cls.code, 0) << cls.err;
    EXPECT_TRUE(json::parse(cls.out).contains("class"));

    const auto complex = run("gen --degrees 2,3,2,2 --seed 8 --kind complex --out morin_cli_test_cmap.json");
    ASSERT_EQ(complex.code, 0);
    const auto sur = run("survey --map morin_cli_test_cmap.json --lines 3 --seed 2");
    ASSERT_EQ(sur.code, 0) << sur.err;
    const auto j = json::parse(sur.out);
    EXPECT_EQ(j["points_found"], 3 * 5);
    EXPECT_EQ(j["points"].size(), 15u);
}

TEST(Cli, SeededRunsAreByteIdentical)
{
    for (const std::string args : {"gen --degrees 2,3,5,7 --seed 11", "gen --degrees 3,2 --seed 11 --kind complex",
                                   "survey --degrees 2,2,2,2 --maps 2 --lines 3 --seed 4"}) {
        const auto a = run(args), b = run(args);
        ASSERT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_NO_THROW((void)json::parse(a.out));
    }
    EXPECT_NE(run("gen --degrees 2,3 --seed 1").out, run("gen --degrees 2,3 --seed 2").out);
}

TEST(Cli, TextFormat)
{
    const auto r = run("gate --degrees 2,3,5,7 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "eligible_generic\n");
    expect_usage_error(run("gate --degrees 2,3,5,7 --format yaml"));
}
