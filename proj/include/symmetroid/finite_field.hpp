#ifndef SYMMETROID_FINITE_FIELD_HPP
#define SYMMETROID_FINITE_FIELD_HPP

#include "bigint.hpp"

#include <cstdint>
#include <vector>

namespace symmetroid {

/// Arithmetic in Z/p for a prime p < 2^32. Elements are residues in [0, p).
///
/// PrimeField and GaloisField share one interface (zero/one/add/sub/mul/neg/inv,
/// from_integer, is_square, size, characteristic) so the finite-field algorithms
/// in quadform and nullstellensatz are written once as templates.
class PrimeField
{
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p)
    {
        if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
            throw Error("PrimeField: modulus " + std::to_string(p) + " is not a prime below 2^32");
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t size() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    bool is_zero(value_type a) const { return a == 0; }

    value_type add(value_type a, value_type b) const
    {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }

    value_type pow(value_type a, std::uint64_t e) const
    {
        value_type r = one();
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    value_type inv(value_type a) const
    {
        if (a == 0)
            throw Error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    value_type from_integer(const BigInt& n) const { return mod_u64(n, p_); }
    value_type from_integer(std::int64_t n) const
    {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    }

    /// Squares include 0.
    bool is_square(value_type a) const
    {
        if (a == 0 || p_ == 2)
            return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

/// GF(p^k) for small q = p^k, by addition and multiplication tables.
///
/// Elements are encoded as integers 0..q-1 whose base-p digits are the
/// coefficients of a polynomial modulo a fixed monic irreducible of degree k
/// (the lexicographically first one). The prime subfield is {0..p-1}.
class GaloisField
{
public:
    using value_type = std::uint32_t;

    static constexpr std::uint32_t kMaxOrder = 1024;

    explicit GaloisField(std::uint32_t q)
    {
        if (q < 2 || q > kMaxOrder)
            throw Error("GaloisField: order out of range");
        std::uint32_t p = 0;
        for (std::uint32_t d = 2; d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        std::uint32_t k = 0;
        std::uint32_t m = q;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1)
            throw Error("GaloisField: " + std::to_string(q) + " is not a prime power");
        p_ = p;
        k_ = k;
        q_ = q;
        build_tables();
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t size() const { return q_; }
    std::uint32_t degree() const { return k_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }

    value_type add(value_type a, value_type b) const { return add_[a * q_ + b]; }
    value_type mul(value_type a, value_type b) const { return mul_[a * q_ + b]; }
    value_type neg(value_type a) const { return neg_[a]; }
    value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
    value_type inv(value_type a) const
    {
        if (a == 0)
            throw Error("GaloisField: inverse of zero");
        return inv_[a];
    }
    value_type pow(value_type a, std::uint64_t e) const
    {
        value_type r = one();
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    value_type from_integer(const BigInt& n) const { return static_cast<value_type>(mod_u64(n, p_)); }
    value_type from_integer(std::int64_t n) const
    {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }

    bool is_square(value_type a) const { return square_[a]; }

    /// Square root of a square; in characteristic 2 every element has one.
    value_type sqrt(value_type a) const
    {
        for (value_type x = 0; x < q_; ++x)
            if (mul(x, x) == a)
                return x;
        throw Error("GaloisField: not a square");
    }

    bool operator==(const GaloisField& o) const { return q_ == o.q_; }

private:
    std::vector<std::uint32_t> digits(std::uint32_t a) const
    {
        std::vector<std::uint32_t> d(k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    std::uint32_t encode(const std::vector<std::uint32_t>& d) const
    {
        std::uint32_t a = 0;
        for (std::uint32_t i = k_; i-- > 0;)
            a = a * p_ + d[i];
        return a;
    }

    // Product of two digit vectors modulo the monic modulus (given by its low
    // k coefficients).
    std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                           const std::vector<std::uint32_t>& modulus) const
    {
        std::vector<std::uint32_t> prod(2 * k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        for (std::uint32_t deg = 2 * k_ - 1; deg >= k_ && deg > 0; --deg) {
            std::uint32_t c = prod[deg];
            if (c == 0)
                continue;
            prod[deg] = 0;
            for (std::uint32_t i = 0; i < k_; ++i)
                prod[deg - k_ + i] = (prod[deg - k_ + i] + (p_ - c) * modulus[i]) % p_;
        }
        prod.resize(k_);
        return prod;
    }

    bool irreducible(const std::vector<std::uint32_t>& low) const
    {
        // A monic polynomial of degree k <= 10 over F_p is irreducible iff it has
        // no monic factor of degree 1..k/2; test by trial division.
        std::vector<std::uint32_t> f(low);
        f.push_back(1);
        for (std::uint32_t d = 1; d <= k_ / 2; ++d) {
            std::uint32_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i)
                count *= p_;
            for (std::uint32_t code = 0; code < count; ++code) {
                std::vector<std::uint32_t> g(d + 1, 0);
                std::uint32_t c = code;
                for (std::uint32_t i = 0; i < d; ++i) {
                    g[i] = c % p_;
                    c /= p_;
                }
                g[d] = 1;
                std::vector<std::uint32_t> r(f);
                for (std::uint32_t deg = k_; deg >= d; --deg) {
                    std::uint32_t lead = r[deg];
                    if (lead != 0)
                        for (std::uint32_t i = 0; i <= d; ++i)
                            r[deg - d + i] = (r[deg - d + i] + (p_ - lead) * g[i]) % p_;
                    if (deg == 0)
                        break;
                }
                bool zero = true;
                for (std::uint32_t i = 0; i < d; ++i)
                    zero = zero && r[i] == 0;
                if (zero)
                    return false;
            }
        }
        return true;
    }

    void build_tables()
    {
        std::vector<std::uint32_t> modulus(k_, 0);
        if (k_ > 1) {
            bool found = false;
            for (std::uint32_t code = 0; code < q_ && !found; ++code) {
                modulus = digits(code);
                found = irreducible(modulus);
            }
            if (!found)
                throw Error("GaloisField: no irreducible modulus found");
        }
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        square_.assign(q_, false);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto da = digits(a);
            std::vector<std::uint32_t> dn(k_);
            for (std::uint32_t i = 0; i < k_; ++i)
                dn[i] = (p_ - da[i]) % p_;
            neg_[a] = encode(dn);
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<std::uint32_t> ds(k_);
                for (std::uint32_t i = 0; i < k_; ++i)
                    ds[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = encode(ds);
                if (k_ == 1)
                    mul_[a * q_ + b] = (a * b) % p_;
                else
                    mul_[a * q_ + b] = encode(poly_mulmod(da, db, modulus));
            }
        }
        for (std::uint32_t a = 0; a < q_; ++a) {
            square_[mul(a, a)] = true;
            for (std::uint32_t b = 1; b < q_; ++b)
                if (mul(a, b) == 1)
                    inv_[a] = b;
        }
    }

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> inv_;
    std::vector<bool> square_;
};

} // namespace symmetroid

#endif // SYMMETROID_FINITE_FIELD_HPP
