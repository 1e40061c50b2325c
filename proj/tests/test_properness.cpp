#include <gtest/gtest.h>

#include <morin/coordinates.hpp>
#include <morin/properness.hpp>

#include "support.hpp"

using namespace morin;
using testing_support::qmap;
using testing_support::qp;

TEST(Sylvester, BasicResultants)
{
    EXPECT_EQ(sylvester_resultant(qp("x1^2", 2), qp("x2^2", 2)), Rational(1));
    EXPECT_EQ(sylvester_resultant(qp("x1^2", 2), qp("x1*x2", 2)), Rational(0));
    const Rational a(3, 2), b(-5);
    const auto pa = qp("x1 + " + Rational(-a).get_str(), 1);
    const auto pb = qp("x1 + " + Rational(-b).get_str(), 1);
    EXPECT_EQ(sylvester_resultant(pa, pb), b - a);
    EXPECT_THROW(sylvester_resultant(Polynomial<Rational>(1), pa), usage_error);
    EXPECT_THROW(sylvester_resultant(qp("x1^2 + x2", 2), qp("x2", 2)), usage_error);
}

TEST(Sylvester, ProductOfRootDifferences)
{
    // Res(p, q) = lc(p)^deg q * prod_{p(r)=0} q(r) for p = (t-1)(t-2), q = t^2 + 3.
    const auto p = qp("x1^2 + -3 * x1 + 2", 1);
    const auto q = qp("x1^2 + 3", 1);
    EXPECT_EQ(sylvester_resultant(p, q), Rational(4 * 7));
}

TEST(Sylvester, ScaleCovariance)
{
    const auto p = qp("2 * x1^3 + -1 * x1 + 5", 1);
    const auto q = qp("x1^2 + 7 * x1 + -3", 1);
    const Rational lambda(-3, 4);
    const Rational base = sylvester_resultant(p, q);
    Rational scale = lambda * lambda; // deg q = 2
    EXPECT_EQ(sylvester_resultant(lambda * p, q), scale * base);
}

TEST(Macaulay, MatrixShape)
{
    const auto F = qmap({2, 2, 2}, {"x1^2", "x2^2", "x3^2"});
    const auto M = macaulay_matrix(std::span<const Polynomial<Rational>>(F.components()), F.degrees());
    // nu = 4, monomials of degree 4 in 3 variables.
    EXPECT_EQ(M.rows, 15u);
    EXPECT_EQ(M.cols, 15u);
    EXPECT_EQ(monomials_of_degree(3, 4).size(), 15u);
}

TEST(Macaulay, PurePowersAreCertified)
{
    const auto F = qmap({2, 3, 5, 7}, {"x1^2", "x2^3", "x3^5", "x4^7"});
    const auto v = macaulay_resultant_certificate(F);
    EXPECT_EQ(v.tag, PropernessVerdict::Tag::proper_certified);
    EXPECT_FALSE(v.witness.has_value());
}

TEST(Macaulay, RepeatedComponentIsNotProper)
{
    const auto F = qmap({2, 2, 2}, {"x1^2 + x2*x3", "x1^2 + x2*x3", "x3^2"});
    const auto v = macaulay_resultant_certificate(F);
    EXPECT_EQ(v.tag, PropernessVerdict::Tag::not_proper);
}

TEST(Macaulay, SharedZeroGetsWitness)
{
    const auto F = qmap({2, 2, 2, 2}, {"x1^2", "x1*x2", "x3^2", "x4^2"});
    const auto v = macaulay_resultant_certificate(F);
    ASSERT_EQ(v.tag, PropernessVerdict::Tag::not_proper);
    ASSERT_TRUE(v.witness.has_value());
    const auto &w = *v.witness;
    EXPECT_LT(std::abs(w[0]), 1e-6);
    EXPECT_NEAR(std::abs(w[1]), 1.0, 1e-6);
    EXPECT_LT(std::abs(w[2]), 1e-3);
    EXPECT_LT(std::abs(w[3]), 1e-3);
}

TEST(Macaulay, GenericMapsAreCertified)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto F = random_map<Rational>(DegreeTuple{2, 2, 2, 2}, seed);
        EXPECT_EQ(macaulay_resultant_certificate(F, {3, seed, 200}).tag, PropernessVerdict::Tag::proper_certified)
            << "seed " << seed;
    }
}

TEST(Macaulay, AgreesWithSylvesterForBinaryForms)
{
    Rng rng(12);
    int zero_cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // Small coefficient range so that common roots occur.
        const auto F = random_map<Rational>(DegreeTuple{2, 3}, std::uint64_t(trial), 1);
        if (F[0].is_zero() || F[1].is_zero()) {
            continue;
        }
        const bool res_nonzero = sgn(sylvester_resultant(F[0], F[1])) != 0;
        const auto v = macaulay_resultant_certificate(F, {3, std::uint64_t(trial), 500});
        EXPECT_EQ(v.tag == PropernessVerdict::Tag::proper_certified, res_nonzero) << "trial " << trial;
        if (!res_nonzero) {
            ++zero_cases;
            EXPECT_EQ(v.tag, PropernessVerdict::Tag::not_proper) << "trial " << trial;
        }
    }
    EXPECT_GT(zero_cases, 0);
}

TEST(Falsifier, IdentityHasNoWitness)
{
    const auto F = qmap({1, 1, 1, 1}, {"x1", "x2", "x3", "x4"});
    EXPECT_FALSE(sphere_falsifier(F, 2000, 1).has_value());
}

TEST(Falsifier, CertifiedMapsHaveNoWitness)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto F = random_map<Rational>(DegreeTuple{2, 2, 2}, seed);
        ASSERT_EQ(macaulay_resultant_certificate(F).tag, PropernessVerdict::Tag::proper_certified);
        EXPECT_FALSE(sphere_falsifier(F, 10000, seed).has_value()) << "seed " << seed;
    }
}

TEST(Falsifier, FloatVerdict)
{
    const auto F = convert<Complex>(qmap({2, 2, 2, 2}, {"x1^2", "x1*x2", "x3^2", "x4^2"}));
    const auto v = falsifier_verdict(F, 2000, 3);
    EXPECT_EQ(v.tag, PropernessVerdict::Tag::not_proper);
    EXPECT_EQ(tag_name(v.tag), "not_proper");
    const auto G = convert<Complex>(qmap({2, 2}, {"x1^2", "x2^2"}));
    EXPECT_EQ(falsifier_verdict(G, 2000, 3).tag, PropernessVerdict::Tag::inconclusive);
}
