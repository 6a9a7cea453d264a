#ifndef SYMMETROID_BIGINT_HPP
#define SYMMETROID_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symmetroid {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline BigRat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw Error("zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const BigInt& a) { return sgn(a); }
inline int sign(const BigRat& a) { return sgn(a); }

inline BigInt ipow(const BigInt& base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b)
{
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Exponent of p in n; n must be nonzero.
inline int valuation(const BigInt& n, const BigInt& p)
{
    if (n == 0)
        throw Error("valuation of zero");
    BigInt m = n;
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline int valuation(const BigRat& q, const BigInt& p)
{
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

/// n with every factor of p removed.
inline BigInt strip_factor(BigInt n, const BigInt& p)
{
    if (n == 0)
        return n;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return n;
}

inline bool is_prime(const BigInt& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_prime(std::uint64_t n) { return is_prime(BigInt(static_cast<unsigned long>(n))); }

/// Nonnegative residue of n modulo m (m > 0, m < 2^63).
inline std::uint64_t mod_u64(const BigInt& n, std::uint64_t m)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), BigInt(static_cast<unsigned long>(m)).get_mpz_t());
    return r.get_ui();
}

inline std::string to_string(const BigInt& n) { return n.get_str(); }
inline std::string to_string(const BigRat& q) { return q.get_str(); }

inline BigInt to_bigint(std::int64_t v) { return BigInt(static_cast<long>(v)); }

} // namespace symmetroid

#endif // SYMMETROID_BIGINT_HPP
