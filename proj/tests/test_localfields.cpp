#include "oracles/oracles.hpp"

#include <symmetroid/localfields.hpp>

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace symmetroid;

TEST(HilbertSymbol, SpecExamples)
{
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(7)})
        EXPECT_EQ(hilbert_symbol(1, 13, v), 1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::infinity()), -1);
    EXPECT_EQ(hilbert_symbol(2, 5, Place::prime(5)), -1);
    EXPECT_EQ(oracle::hilbert_brute(2, 5, 5), -1);
}

TEST(HilbertSymbol, RationalArgumentsReduceToIntegers)
{
    // (a/b^2, c) = (a, c) and (a/b, c) = (ab, c).
    EXPECT_EQ(hilbert_symbol(BigRat(2, 9), BigRat(5), Place::prime(5)), -1);
    EXPECT_EQ(hilbert_symbol(BigRat(2, 3), BigRat(5), Place::prime(5)), hilbert_symbol(6, 5, Place::prime(5)));
    EXPECT_THROW(hilbert_symbol(BigRat(0), BigRat(3), Place::prime(3)), Error);
}

TEST(HilbertSymbol, AgreesWithBruteForceSearch)
{
    // Cached by the pair after removing square factors; the oracle does the same.
    int violations = 0, checked = 0;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        std::map<std::pair<std::int64_t, std::int64_t>, int> cache;
        for (std::int64_t a = -30; a <= 30; ++a)
            for (std::int64_t b = -30; b <= 30; ++b) {
                if (a == 0 || b == 0)
                    continue;
                auto key = std::make_pair(oracle::reduce_square_part(a, p), oracle::reduce_square_part(b, p));
                auto it = cache.find(key);
                int want = it != cache.end() ? it->second : (cache[key] = oracle::hilbert_brute(key.first, key.second, p));
                ++checked;
                if (hilbert_symbol(a, b, Place::prime(static_cast<std::uint64_t>(p))) != want)
                    ++violations;
            }
    }
    EXPECT_EQ(checked, 6 * 60 * 60);
    EXPECT_EQ(violations, 0);
}

TEST(HilbertSymbol, ProductFormulaOnRandomPairs)
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> d(-100000, 100000);
    for (int trial = 0; trial < 1000; ++trial) {
        long a = 0, b = 0;
        while (a == 0)
            a = d(rng);
        while (b == 0)
            b = d(rng);
        int prod = hilbert_symbol(a, b, Place::infinity());
        // Only 2 and primes dividing ab can contribute -1.
        BigInt n = BigInt(a) * BigInt(b) * 2;
        n = abs(n);
        for (unsigned long p = 2; n > 1; ++p) {
            if (!mpz_divisible_ui_p(n.get_mpz_t(), p))
                continue;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                n /= p;
            prod *= hilbert_symbol(a, b, Place::prime(p));
        }
        ASSERT_EQ(prod, 1) << "a=" << a << " b=" << b;
    }
}

TEST(HilbertSymbol, BilinearAndSymmetric)
{
    for (std::uint64_t p : {2, 3, 5}) {
        Place v = Place::prime(p);
        for (long a : {-6, -3, -1, 2, 3, 5, 10})
            for (long b : {-7, -2, 3, 6, 15})
                for (long c : {-1, 2, 5}) {
                    EXPECT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
                    EXPECT_EQ(hilbert_symbol(a, b * c, v), hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
                }
        for (long a : {-6, -3, 2, 3, 5, 10})
            EXPECT_EQ(hilbert_symbol(a, -a, v), 1);
    }
}

TEST(SquareClass, SpecExamples)
{
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(5)})
        EXPECT_TRUE(is_square(BigRat(36), v));
    EXPECT_FALSE(is_square(BigRat(-4), Place::infinity()));
    auto c = square_class(BigRat(3), Place::prime(2));
    EXPECT_FALSE(c.is_square());
    EXPECT_EQ(c.unit, 3);
    EXPECT_EQ(c.valuation_parity, 0);
}

TEST(SquareClass, MatchesOracleOnIntegers)
{
    for (std::int64_t p : {2, 3, 5, 7})
        for (std::int64_t a = -200; a <= 200; ++a) {
            if (a == 0)
                continue;
            EXPECT_EQ(is_square(BigRat(a), Place::prime(static_cast<std::uint64_t>(p))), oracle::padic_square(a, p))
                << a << " at " << p;
        }
}

TEST(QuaternionInvariant, SpecExamples)
{
    EXPECT_EQ(quaternion_invariant(1, 7, Place::prime(3)), LocalInvariant::zero());
    EXPECT_EQ(quaternion_invariant(-1, -1, Place::infinity()), LocalInvariant::one_half());
    EXPECT_EQ(quaternion_invariant(2, 5, Place::prime(5)), LocalInvariant::one_half());
}

TEST(Place, ParsesAndRejects)
{
    EXPECT_TRUE(Place::parse("inf").is_infinite());
    EXPECT_EQ(Place::parse("13").p(), 13u);
    EXPECT_THROW(Place::parse("12"), Error);
    EXPECT_THROW(Place::parse("3x"), Error);
    EXPECT_THROW(Place::infinity().p(), Error);
}

TEST(Isotropy, DiagonalCriteria)
{
    // The norm form of Hamilton's quaternions: anisotropic exactly at 2 and infinity.
    std::vector<BigRat> norm{1, 1, 1, 1};
    EXPECT_FALSE(is_isotropic_diagonal(norm, Place::infinity()));
    EXPECT_FALSE(is_isotropic_diagonal(norm, Place::prime(2)));
    EXPECT_TRUE(is_isotropic_diagonal(norm, Place::prime(3)));
    EXPECT_TRUE(is_isotropic_diagonal(std::vector<BigRat>{1, -1}, Place::prime(7)));
    EXPECT_FALSE(is_isotropic_diagonal(std::vector<BigRat>{6, -3, 2, -1}, Place::prime(3)));
    EXPECT_TRUE(is_isotropic_diagonal(std::vector<BigRat>{6, -3, 2, -1}, Place::prime(5)));
}
