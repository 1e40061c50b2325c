#include <gtest/gtest.h>

#include <algorithm>

#include <morin/census.hpp>

#include "support.hpp"

using namespace morin;
using testing_support::chern_display;
using testing_support::tex_poly;

namespace
{

// Coefficients of prod(1 + d_i a) / (1 + a)^4 through a^4 by long division.
std::array<long, 4> long_division_chern(const std::vector<long> &d)
{
    std::array<long, 5> num{1, 0, 0, 0, 0};
    for (long di : d) {
        for (std::size_t k = 4; k >= 1; --k) {
            num[k] += num[k - 1] * di;
        }
    }
    const std::array<long, 5> den{1, 4, 6, 4, 1};
    std::array<long, 5> q{};
    for (std::size_t k = 0; k < 5; ++k) {
        q[k] = num[k];
        for (std::size_t j = 0; k + j < 5; ++j) {
            num[k + j] -= q[k] * den[j];
        }
    }
    return {q[1], q[2], q[3], q[4]};
}

std::vector<Rational> counts_of(const std::vector<int> &d)
{
    const auto r = census(DegreeTuple(d));
    return {r.counts.begin(), r.counts.end()};
}

} // namespace

TEST(ChernSeries, MatchesDisplayedCoefficients)
{
    const auto s = chern_series();
    EXPECT_EQ(s[0], symbolic_constant(1));
    EXPECT_EQ(s[1], tex_poly(chern_display[0]));
    EXPECT_EQ(s[2], tex_poly(chern_display[1]));
    EXPECT_EQ(s[3], tex_poly(chern_display[2]));
    EXPECT_EQ(s[4], tex_poly(chern_display[3]));
}

TEST(ChernSeries, UnitDegreesCollapse)
{
    const auto s = chern_series();
    const std::vector<Integer> ones{1, 1, 1, 1};
    EXPECT_EQ(s[0].eval(ones), 1);
    for (std::size_t k = 1; k <= 4; ++k) {
        EXPECT_EQ(s[k].eval(ones), 0);
    }
}

TEST(ChernSeries, TruncatedProductDropsHighOrder)
{
    TruncatedSeries<Integer, 2> a(Integer(0));
    a[1] = 1;
    const auto sq = a * a;
    EXPECT_EQ(sq[2], 1);
    EXPECT_EQ((sq * a)[2], 0);
}

TEST(Census, ChernValuesAgreeWithLongDivision)
{
    for (int a = 1; a <= 6; ++a) {
        for (int b = 1; b <= 6; ++b) {
            for (int c = 1; c <= 6; ++c) {
                for (int e = 1; e <= 6; ++e) {
                    const auto got = chern_classes(DegreeTuple{a, b, c, e});
                    const auto want = long_division_chern({a, b, c, e});
                    for (std::size_t i = 0; i < 4; ++i) {
                        EXPECT_EQ(got[i], want[i]);
                    }
                }
            }
        }
    }
}

TEST(Census, SClasses)
{
    const auto s = s_classes(DegreeTuple{2, 3, 5, 7});
    EXPECT_EQ(s.s0, 210);
    EXPECT_EQ(s.s1, 13 * 210);
    EXPECT_EQ(s.s2 * s.s0, s.s1 * s.s1);
    EXPECT_EQ(s.s01, 43 * 210);
    EXPECT_EQ(s.s001, -7 * 210);
    const auto one = s_classes(DegreeTuple{1, 1, 1, 1});
    EXPECT_EQ(one.s0, 1);
    EXPECT_EQ(one.s1, 0);
    EXPECT_THROW(s_classes(DegreeTuple{2, 3}), usage_error);
}

TEST(Census, SymbolicRelation)
{
    const auto k = symbolic_classes();
    EXPECT_EQ(k.s2 * k.s0, k.s1 * k.s1);
    EXPECT_EQ(k.s11 * k.s0, k.s1 * k.s01);
}

TEST(Census, FrozenValues)
{
    // Frozen from an independent exact-fraction evaluation of the same closed forms.
    const auto r = census(DegreeTuple{2, 3, 5, 7});
    EXPECT_EQ(r.c, (std::array<Integer, 4>{13, 43, -7, -73}));
    const std::vector<Rational> want{Rational(Integer("9669241152")), 279456, 10038664, 4451346, 74604, 1940};
    EXPECT_EQ(counts_of({2, 3, 5, 7}), want);
    EXPECT_EQ(counts_of({2, 2, 2, 2}), (std::vector<Rational>{5750, 348, 2520, 1116, 330, 20}));
    EXPECT_EQ(counts_of({3, 3, 3, 3}), (std::vector<Rational>{64082400, 23640, 501760, 222240, 10080, 320}));
    EXPECT_EQ(counts_of({2, 4, 3, 5}), (std::vector<Rational>{571324530, 70530, 1906144, 846072, 25164, 725}));
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Census, DegenerateTupleIsAllZero)
{
    const auto r = census(DegreeTuple{1, 1, 1, 1});
    for (const auto &c : r.c) {
        EXPECT_EQ(c, 0);
    }
    for (const auto &v : r.counts) {
        EXPECT_EQ(v, 0);
    }
}

TEST(Census, ThreeEvenDegreesGiveHalfIntegerA22)
{
    const auto r = census(DegreeTuple{1, 2, 2, 2});
    EXPECT_FALSE(r.integral());
    EXPECT_EQ(r.counts[3], Rational(81, 2));
    EXPECT_NE(r.eligibility.tag, EligibilityVerdict::Tag::eligible_generic);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Census, EligibleTuplesAreIntegralAndSymmetric)
{
    for (int a = 1; a <= 9; ++a) {
        for (int b = 1; b <= 9; ++b) {
            for (int c = 1; c <= 9; ++c) {
                for (int e = 1; e <= 9; ++e) {
                    std::vector<int> d{a, b, c, e};
                    const auto r = census(DegreeTuple(d));
                    const int even = int(std::count_if(d.begin(), d.end(), [](int x) { return x % 2 == 0; }));
                    EXPECT_EQ(r.integral(), even != 3) << a << b << c << e;
                    std::vector<int> p{c, e, b, a};
                    EXPECT_EQ(census(DegreeTuple(p)).counts, r.counts);
                }
            }
        }
    }
}
