#ifndef SYMMETROID_LOCALFIELDS_HPP
#define SYMMETROID_LOCALFIELDS_HPP

#include "bigint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symmetroid {

/// A place of Q: a prime p, or the real place (stored as p = 0).
class Place
{
public:
    static Place infinity() { return Place(); }
    static Place prime(std::uint64_t p)
    {
        if (!is_prime(p))
            throw Error("Place: " + std::to_string(p) + " is not prime");
        Place v;
        v.p_ = p;
        return v;
    }

    bool is_infinite() const { return p_ == 0; }
    std::uint64_t p() const
    {
        if (p_ == 0)
            throw Error("Place: the real place has no residue characteristic");
        return p_;
    }
    BigInt p_big() const { return BigInt(static_cast<unsigned long>(p())); }

    std::string str() const { return p_ == 0 ? "inf" : std::to_string(p_); }

    /// Parses "inf", "oo", "infinity", "real" or a prime.
    static Place parse(const std::string& s)
    {
        if (s == "inf" || s == "oo" || s == "infinity" || s == "real")
            return infinity();
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            throw Error("Place: cannot parse '" + s + "'");
        }
        if (used != s.size())
            throw Error("Place: cannot parse '" + s + "'");
        return prime(v);
    }

    bool operator==(const Place& o) const { return p_ == o.p_; }
    bool operator!=(const Place& o) const { return p_ != o.p_; }
    bool operator<(const Place& o) const { return p_ < o.p_; }

private:
    Place() = default;
    std::uint64_t p_ = 0;
};

/// Element of (1/2)Z/Z.
struct LocalInvariant
{
    bool half = false;

    static LocalInvariant zero() { return {false}; }
    static LocalInvariant one_half() { return {true}; }

    std::string str() const { return half ? "1/2" : "0"; }
    bool operator==(const LocalInvariant& o) const { return half == o.half; }
    bool operator!=(const LocalInvariant& o) const { return half != o.half; }
};

/// Canonical representative of a class in Q_v^* / (Q_v^*)^2.
///
/// Real place: unit = sign. Odd p: unit = Legendre symbol of the unit part.
/// p = 2: unit = unit part mod 8, one of 1, 3, 5, 7.
struct SquareClass
{
    Place place = Place::infinity();
    int valuation_parity = 0;
    int unit = 1;

    bool is_square() const
    {
        if (valuation_parity != 0)
            return false;
        if (place.is_infinite())
            return unit > 0;
        return unit == 1;
    }

    bool operator==(const SquareClass& o) const
    {
        return place == o.place && valuation_parity == o.valuation_parity && unit == o.unit;
    }
};

namespace detail {

/// n*d has the same square class as n/d; both are nonzero.
inline BigInt integer_representative(const BigRat& a)
{
    if (a == 0)
        throw Error("square class of zero");
    return a.get_num() * a.get_den();
}

inline int legendre(const BigInt& u, const BigInt& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

/// Splits n = p^alpha * u with u prime to p.
inline void split_power(const BigInt& n, const BigInt& p, int& alpha, BigInt& u)
{
    alpha = valuation(n, p);
    u = n;
    for (int i = 0; i < alpha; ++i)
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
}

inline int mod8(const BigInt& u) { return static_cast<int>(mod_u64(u, 8)); }

} // namespace detail

inline SquareClass square_class(const BigRat& a, const Place& v)
{
    BigInt n = detail::integer_representative(a);
    SquareClass c;
    c.place = v;
    if (v.is_infinite()) {
        c.unit = sgn(n);
        return c;
    }
    BigInt p = v.p_big();
    int alpha;
    BigInt u;
    detail::split_power(n, p, alpha, u);
    c.valuation_parity = alpha % 2;
    c.unit = v.p() == 2 ? detail::mod8(u) : detail::legendre(u, p);
    return c;
}

inline bool is_square(const BigRat& a, const Place& v) { return square_class(a, v).is_square(); }

/// Hilbert symbol (a, b)_v in {+1, -1}.
inline int hilbert_symbol(const BigRat& a, const BigRat& b, const Place& v)
{
    if (a == 0 || b == 0)
        throw Error("hilbert_symbol: zero argument");
    BigInt x = detail::integer_representative(a);
    BigInt y = detail::integer_representative(b);
    if (v.is_infinite())
        return (x < 0 && y < 0) ? -1 : 1;
    BigInt p = v.p_big();
    int alpha, beta;
    BigInt u, w;
    detail::split_power(x, p, alpha, u);
    detail::split_power(y, p, beta, w);
    if (v.p() == 2) {
        int um = detail::mod8(u), wm = detail::mod8(w);
        int eps_u = ((um - 1) / 2) % 2, eps_w = ((wm - 1) / 2) % 2;
        int om_u = ((um * um - 1) / 8) % 2, om_w = ((wm * wm - 1) / 8) % 2;
        int e = (eps_u * eps_w + alpha * om_w + beta * om_u) % 2;
        return e ? -1 : 1;
    }
    int eps_p = static_cast<int>(((v.p() - 1) / 2) % 2);
    int s = (alpha % 2 && beta % 2 && eps_p) ? -1 : 1;
    if (beta % 2)
        s *= detail::legendre(u, p);
    if (alpha % 2)
        s *= detail::legendre(w, p);
    return s;
}

inline int hilbert_symbol(long a, long b, const Place& v) { return hilbert_symbol(BigRat(a), BigRat(b), v); }

/// Invariant of the quaternion algebra (a, b) at v.
inline LocalInvariant quaternion_invariant(const BigRat& a, const BigRat& b, const Place& v)
{
    return {hilbert_symbol(a, b, v) == -1};
}

/// Hasse invariant prod_{i<j} (d_i, d_j)_v of a diagonal form.
inline int hasse_invariant(const std::vector<BigRat>& d, const Place& v)
{
    int e = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            e *= hilbert_symbol(d[i], d[j], v);
    return e;
}

/// Whether the nondegenerate diagonal form <d_1, ..., d_r> has a nontrivial zero over Q_v.
inline bool is_isotropic_diagonal(const std::vector<BigRat>& d, const Place& v)
{
    for (const auto& x : d)
        if (x == 0)
            throw Error("is_isotropic_diagonal: zero diagonal entry");
    std::size_t r = d.size();
    if (r == 0)
        throw Error("is_isotropic_diagonal: empty form");
    if (r == 1)
        return false;
    BigRat disc = 1;
    for (const auto& x : d)
        disc *= x;
    if (r == 2)
        return is_square(-disc, v);
    int eps = hasse_invariant(d, v);
    if (r == 3)
        return hilbert_symbol(BigRat(-1), BigRat(-disc), v) == eps;
    if (r == 4)
        return !is_square(disc, v) || eps == hilbert_symbol(-1, -1, v);
    if (v.is_infinite()) {
        bool pos = false, neg = false;
        for (const auto& x : d)
            (x > 0 ? pos : neg) = true;
        return pos && neg;
    }
    return true;
}

} // namespace symmetroid

#endif // SYMMETROID_LOCALFIELDS_HPP
