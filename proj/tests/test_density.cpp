#include "fixtures.hpp"
#include "oracles/oracles.hpp"

#include <symmetroid/density.hpp>

#include <gtest/gtest.h>

using namespace symmetroid;

TEST(GaussianCount, SpecExamples)
{
    EXPECT_EQ(gaussian_count(3, 4, 2), 31);
    EXPECT_EQ(gaussian_count(2, 4, 2), 155);
    for (std::uint64_t p : {2, 3, 5, 7})
        for (unsigned n = 1; n < 8; ++n)
            EXPECT_EQ(gaussian_count(0, n, p), (ipow(BigInt(static_cast<unsigned long>(p)), n + 1) - 1) / (p - 1));
}

TEST(GaussianCount, AgreesWithEchelonEnumeration)
{
    for (std::uint64_t p : {2, 3, 5, 7})
        for (unsigned n = 0; n < 7; ++n)
            for (unsigned k = 0; k <= n; ++k)
                EXPECT_EQ(gaussian_count(k, n, p), oracle::count_subspaces(k + 1, n + 1, p)) << k << " " << n << " " << p;
}

TEST(BOfP, SpecExamples)
{
    EXPECT_EQ(b_of_p(2), BigRat(186, 1057));
    EXPECT_EQ(b_of_p_counting(2), b_of_p(2));
    BigRat ratio(gaussian_count(3, 13, 2) * 186, gaussian_count(4, 14, 2));
    ratio.canonicalize();
    EXPECT_EQ(b_of_p_counting(2), ratio);
}

TEST(BOfP, ClosedFormMatchesCountingBelowOneThousand)
{
    for (auto p : primes_below(1000))
        ASSERT_EQ(b_of_p(p), b_of_p_counting(p)) << p;
}

TEST(CountBp, Formula)
{
    EXPECT_EQ(count_bp(2), 186);
    EXPECT_EQ(count_bp(3), 121 + gaussian_count(2, 4, 3) * 3);
}

TEST(ProductLowerBound, CutoffOneHundred)
{
    auto r = product_lower_bound(100);
    EXPECT_GE(r.partial_product, BigRat(737, 1000));
    EXPECT_LE(r.partial_product, BigRat(740, 1000));
    EXPECT_GE(r.final_bound, BigRat(73, 100));
    EXPECT_TRUE(r.monotonicity_certified);
    EXPECT_EQ(r.table.size(), 25u);
    EXPECT_EQ(decimal_string(r.partial_product), "0.7371229697");
}

TEST(ProductLowerBound, LargerCutoffIsTighter)
{
    EXPECT_GE(product_lower_bound(1000).final_bound, product_lower_bound(100).final_bound);
    EXPECT_THROW(product_lower_bound(50), Error);
}

TEST(PartialProduct, SingleFactor)
{
    EXPECT_EQ(partial_product(2), BigRat(871, 1057));
    EXPECT_EQ(partial_product(1), 1);
}

TEST(DecimalString, Truncates)
{
    EXPECT_EQ(decimal_string(BigRat(2, 3), 4), "0.6666");
    EXPECT_EQ(decimal_string(BigRat(-1, 8), 2), "-0.12");
    EXPECT_EQ(decimal_string(BigRat(7), 1), "7.0");
}

TEST(SpMember, DoublePlaneAlwaysBad)
{
    auto d = fixtures::diagonal_pencil();
    for (std::uint64_t p : {2, 3, 5, 7}) {
        auto r = sp_member(d, p);
        EXPECT_TRUE(r.member) << p;
        EXPECT_FALSE(r.witness.empty());
    }
}

TEST(SpMember, RealObstructionPencilAvoidsSmallPrimes)
{
    auto thm = fixtures::real_obstruction_pencil();
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
        EXPECT_FALSE(sp_member(thm, p).member) << p;
    for (std::uint64_t p : {3, 5})
        EXPECT_FALSE(sp_member(thm, p, "exhaustive").member) << p;
}

TEST(SpMember, NonsplitRankTwoMember)
{
    auto q = fixtures::real_obstruction_pencil().quadrics();
    q[0] = parse_quadric("x0^2 - 2*x1^2");
    Pencil p(q);
    // 2 is a nonsquare mod 5 and a square mod 7.
    auto at5 = sp_member(p, 5);
    EXPECT_TRUE(at5.member);
    EXPECT_EQ(sp_member(p, 5, "exhaustive").member, at5.member);
    EXPECT_EQ(sp_member(p, 7, "kernel").member, sp_member(p, 7, "exhaustive").member);
}

TEST(SpMember, KernelAndExhaustiveAgreeOnSampledFrames)
{
    for (std::uint64_t i = 0; i < 25; ++i) {
        auto s = sample_frame(3, 17, i);
        for (std::uint64_t p : {3, 5})
            EXPECT_EQ(sp_member(s.quadrics, p, "kernel").member, sp_member(s.quadrics, p, "exhaustive").member)
                << "sample " << i << " p " << p;
    }
}

TEST(Census, TwoMatchesFormula)
{
    BigInt n = census_bp(2);
    EXPECT_EQ(n, 186);
    EXPECT_GE(n, gaussian_count(3, 4, 2));
}

TEST(MonteCarlo, EmptyAndDeterministic)
{
    auto empty = monte_carlo_density(10, 20, 0, 1);
    EXPECT_EQ(empty.samples, 0u);
    EXPECT_EQ(empty.passes, 0u);

    auto a = monte_carlo_density(10, 20, 60, 99, 1);
    auto b = monte_carlo_density(10, 20, 60, 99, 3);
    EXPECT_EQ(a.passes, b.passes);
    EXPECT_EQ(a.failures_by_prime, b.failures_by_prime);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_THROW(monte_carlo_density(1, 20, 5, 1), Error);
}

TEST(Albert, NoCounterexamplesOverF2)
{
    auto r = albert_check(2);
    EXPECT_GT(r.forms_with_nonzero_generator, 0u);
    EXPECT_EQ(r.counterexamples, 0u);
}

TEST(V3, RealObstructionPencilAvoidsAllPrimes)
{
    auto c = v3_avoidance(fixtures::real_obstruction_pencil());
    EXPECT_TRUE(c.certified);
    EXPECT_TRUE(c.saturated_at_2);
}
