#include "expected_symbol.hpp"
#include "fixtures.hpp"
#include "oracles/oracles.hpp"

#include <symmetroid/pencil.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace symmetroid;

TEST(Pencil, FixturesParse)
{
    auto thm = fixtures::real_obstruction_pencil();
    EXPECT_EQ(thm.quadrics()[0].str(), "x0*x1 + x2*x3");
    auto prop = fixtures::padic_obstruction_pencil();
    EXPECT_EQ(prop.quadrics()[0].str(), "6*x0^2 - 3*x1^2 + 2*x2^2 - x3^2");
    EXPECT_EQ(prop.quadrics()[1].str(), "x0*x1 + x2*x3");
    auto cor = fixtures::smooth_mod5_pencil();
    EXPECT_EQ(cor.quadrics()[0].str(), "x0^2 + x1^2 + x2^2 + x3^2");
}

TEST(Pencil, SerializeRoundTrip)
{
    for (auto name : {"real_obstruction.pencil", "smooth_mod5.pencil", "padic_obstruction.pencil"}) {
        auto p = fixtures::load(name);
        auto again = parse_pencil(serialize_pencil(p));
        for (std::size_t i = 0; i < 5; ++i)
            EXPECT_EQ(again.quadrics()[i].coeffs(), p.quadrics()[i].coeffs()) << name;
    }
}

TEST(Pencil, RejectsWrongCountAndDependence)
{
    EXPECT_THROW(parse_pencil("x0^2\nx1^2\nx2^2\nx3^2\n"), Error);
    EXPECT_THROW(parse_pencil("x0^2\nx1^2\nx2^2\nx3^2\nx0^2 + x1^2\n"), Error);
    EXPECT_THROW(parse_pencil("x0^2\n2*x0^2\n3*x0^2\n4*x0^2\n5*x0^2\n"), Error);
    EXPECT_THROW(parse_pencil("x0^2\nx1^2\nx2^2\nx3^2\nz4^2\n"), Error);
    // Comments and blank lines are skipped.
    EXPECT_NO_THROW(parse_pencil("# diagonal\nx0^2\n\nx1^2\nx2^2\nx3^2\nx4^2\n"));
}

TEST(UniversalGram, RealObstructionPencilFirstMinor)
{
    auto thm = fixtures::real_obstruction_pencil();
    EXPECT_EQ(to_string(leading_minor(thm.universal_gram(), 1)), "2*t1 + 2*t2 + 8*t3 + 2*t4");
}

TEST(UniversalGram, DiagonalPencil)
{
    auto d = fixtures::diagonal_pencil();
    EXPECT_EQ(to_string(d.discriminant()), "32*t0*t1*t2*t3*t4");
}

TEST(UniversalGram, SpecializesToMemberGram)
{
    auto thm = fixtures::real_obstruction_pencil();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<BigInt> t(5);
        std::vector<BigRat> tr(5);
        for (std::size_t i = 0; i < 5; ++i)
            tr[i] = t[i] = d(rng);
        auto g = thm.member(t).gram();
        for (std::size_t k = 1; k <= 5; ++k)
            EXPECT_EQ(to_rational(leading_minor(thm.universal_gram(), k)).evaluate(tr), BigRat(oracle::leading_minor_at(g, k)));
    }
}

TEST(AlphaSymbol, RealObstructionPencilMatchesPrintedPair)
{
    auto s = alpha_symbol(fixtures::real_obstruction_pencil());
    EXPECT_EQ(s.attempts, 0);
    EXPECT_EQ(to_string(s.a1), expected::a1);
    EXPECT_EQ(to_string(s.a2), expected::a2);
    EXPECT_EQ(to_string(s.b2), expected::b2);
    // The printed b1 drops one term of M3; everything else agrees.
    EXPECT_EQ(to_string(s.b1 - parse_polynomial(expected::b1, "t", 5)), "-2*t2^3");
}

TEST(AlphaSymbol, CubicMinorAtSecondBasisMember)
{
    // At t = e2 the member is Q2 and its leading 3x3 Gram block is [[2,0,2],[0,0,1],[2,1,0]].
    auto p = fixtures::real_obstruction_pencil();
    EXPECT_EQ(oracle::leading_minor_at(p.quadrics()[2].gram(), 3), -2);
    EXPECT_EQ(alpha_symbol(p).b1.evaluate(std::vector<BigInt>{0, 0, 1, 0, 0}), -2);
}

TEST(AlphaSymbol, DiagonalPencilNeedsABasisChange)
{
    // M_1 = 2 t0 vanishes on the component t0 = 0 of H, so the given basis fails.
    auto d = fixtures::diagonal_pencil();
    EXPECT_EQ(to_string(leading_minor(d.universal_gram(), 2)), "4*t0*t1");
    auto s = alpha_symbol(d);
    EXPECT_GT(s.attempts, 0);
    EXPECT_NE(det_bareiss(s.basis_change), 0);
    auto moved = d.transformed(s.basis_change);
    for (std::size_t k = 0; k < 4; ++k)
        EXPECT_EQ(to_string(s.minors[k]), to_string(leading_minor(moved.universal_gram(), k + 1)));
}

TEST(AlphaSymbol, PairIdentitiesHoldForEveryFixture)
{
    for (auto name : {"real_obstruction.pencil", "smooth_mod5.pencil", "padic_obstruction.pencil"}) {
        auto s = alpha_symbol(fixtures::load(name));
        EXPECT_EQ(to_string(s.a1), to_string(s.minors[1]));
        EXPECT_EQ(to_string(s.a2), to_string(s.minors[0] * s.minors[0]));
        EXPECT_EQ(to_string(s.b1), to_string(s.minors[2]));
        EXPECT_EQ(to_string(s.b2), to_string(s.minors[1] * s.minors[0]));
    }
}

TEST(CramerKernel, SpansTheKernelOnTheDiscriminant)
{
    auto thm = fixtures::real_obstruction_pencil();
    auto v = cramer_kernel_vector(thm);
    // t = e0 is singular with kernel e4.
    std::vector<BigRat> t{1, 0, 0, 0, 0};
    std::vector<BigRat> k;
    for (auto& c : v)
        k.push_back(to_rational(c).evaluate(t));
    EXPECT_EQ(primitive_integer_vector(k), (std::vector<BigInt>{0, 0, 0, 0, 1}));
}

TEST(Regularity, RealObstructionPencilCertifiesAtThree)
{
    auto c = regularity_certificate(fixtures::real_obstruction_pencil(), 3);
    EXPECT_EQ(c.verdict, RegularityCertificate::Verdict::certified) << c.reasoning;
    EXPECT_EQ(c.coefficient_rank_mod_p, 5u);
}

TEST(Regularity, RealObstructionPencilMeetsTheDiagonalAtFive)
{
    auto thm = fixtures::real_obstruction_pencil();
    auto c = regularity_certificate(thm, 5);
    EXPECT_EQ(c.verdict, RegularityCertificate::Verdict::violated);
    EXPECT_FALSE(c.diagonal_empty);
    // (1:3:1:2:4) is a common zero of Q_0..Q_4 modulo 5.
    std::vector<BigInt> x{1, 3, 1, 2, 4};
    for (const auto& q : thm.quadrics()) {
        BigInt val = 0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j)
                val += q.coeff(i, j) * x[i] * x[j];
        EXPECT_EQ(mod_u64(val, 5), 0u);
    }
}

TEST(Regularity, CorollaryPencilCertifiesAtFive)
{
    auto c = regularity_certificate(fixtures::smooth_mod5_pencil(), 5);
    EXPECT_EQ(c.verdict, RegularityCertificate::Verdict::certified) << c.reasoning;
}

TEST(Regularity, SharedBasePointFailsDiagonalCheck)
{
    // Every generator vanishes at (0:0:0:0:1).
    auto p = parse_pencil("x0^2\nx1*x4\nx2*x4 + x1^2\nx3*x4\nx0*x4 + x2^2 + x3^2\n");
    auto c = regularity_certificate(p, 7);
    EXPECT_FALSE(c.diagonal_empty);
    EXPECT_EQ(c.verdict, RegularityCertificate::Verdict::violated);
}

TEST(Regularity, DegenerateReductionIsReported)
{
    // Generators independent over Q but dependent mod 3.
    auto p = parse_pencil("x0^2\nx1^2\nx2^2\nx3^2\nx0^2 + 3*x4^2\n");
    auto c = regularity_certificate(p, 3);
    EXPECT_LT(c.coefficient_rank_mod_p, 5u);
    EXPECT_NE(c.verdict, RegularityCertificate::Verdict::certified);
}

TEST(XPoint, RealObstructionPencilBilinearVanishing)
{
    auto x = x_point_from_singular_member(fixtures::real_obstruction_pencil(), {1, 0, 0, 0, 0}, {0, 0, 0, 0, 1});
    EXPECT_FALSE(x.degenerate);
    EXPECT_TRUE(x.bilinear_vanishing);
    EXPECT_EQ(x.solution_basis.size(), 2u);
}

TEST(XPoint, DiagonalPencilCoordinateKernel)
{
    // B(e1) = diag(0, 2, 0, 0, 0) has e0 in its kernel; w must be orthogonal to e0.
    auto x = x_point_from_singular_member(fixtures::diagonal_pencil(), {0, 1, 0, 0, 0}, {1, 0, 0, 0, 0});
    EXPECT_TRUE(x.bilinear_vanishing);
    EXPECT_FALSE(x.degenerate);
    EXPECT_EQ(x.w[0], 0);
    EXPECT_EQ(x.solution_basis.size(), 4u);
}

TEST(XPoint, RejectsVectorOutsideTheKernel)
{
    EXPECT_THROW(x_point_from_singular_member(fixtures::real_obstruction_pencil(), {1, 0, 0, 0, 0}, {1, 0, 0, 0, 0}), Error);
}
