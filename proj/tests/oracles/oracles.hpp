#ifndef SYMMETROID_TESTS_ORACLES_HPP
#define SYMMETROID_TESTS_ORACLES_HPP

// Brute-force reference implementations. None of these calls into the
// library's number theory; they only share the integer and matrix types.

#include <symmetroid/matrix.hpp>
#include <symmetroid/quadform.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using symmetroid::BigInt;
using symmetroid::BigRat;

inline std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

/// Is the nonzero integer c a square in Z_p? Decided from the valuation and a
/// square table of units mod p (odd p) or mod 8 (p = 2), built by enumeration.
inline bool padic_square(std::int64_t c, std::int64_t p)
{
    if (c == 0)
        return true;
    int v = 0;
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    if (v % 2)
        return false;
    std::int64_t m = p == 2 ? 8 : p;
    std::int64_t r = mod(c, m);
    for (std::int64_t x = 1; x < m; ++x)
        if (x % p != 0 && (x * x) % m == r)
            return true;
    return false;
}

/// Removes even powers of p so both valuations are 0 or 1.
inline std::int64_t reduce_square_part(std::int64_t a, std::int64_t p)
{
    while (a % (p * p) == 0)
        a /= p * p;
    return a;
}

/// (a, b)_p by search: +1 iff z^2 = a x^2 + b y^2 has a primitive solution in
/// Z_p. Any such solution can be moved so that c = a x^2 + b y^2 is a nonzero
/// p-adic square with (x, y) primitive. Once both valuations are at most 1,
/// whether c is a square only depends on (x, y) modulo p^2 for odd p and
/// modulo 2^6 for p = 2, so a finite box decides it.
inline int hilbert_brute(std::int64_t a, std::int64_t b, std::int64_t p)
{
    a = reduce_square_part(a, p);
    b = reduce_square_part(b, p);
    const std::int64_t m = p == 2 ? 64 : p * p;
    for (std::int64_t x = 0; x < m; ++x)
        for (std::int64_t y = 0; y < m; ++y) {
            if (x % p == 0 && y % p == 0)
                continue;
            std::int64_t c = a * x * x + b * y * y;
            if (c != 0 && padic_square(c, p))
                return 1;
        }
    return -1;
}

/// Real Hilbert symbol: -1 iff both are negative.
inline int hilbert_real(std::int64_t a, std::int64_t b) { return (a < 0 && b < 0) ? -1 : 1; }

/// Sum over P^4(F_p) points (first nonzero coordinate 1).
inline void for_each_point(std::int64_t p, std::size_t n, const std::function<void(const std::vector<std::int64_t>&)>& f)
{
    std::vector<std::int64_t> x(n, 0);
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[lead] = 1;
        std::size_t free = n - lead - 1;
        std::int64_t total = ipow(p, static_cast<int>(free));
        for (std::int64_t code = 0; code < total; ++code) {
            std::int64_t c = code;
            for (std::size_t k = lead + 1; k < n; ++k) {
                x[k] = c % p;
                c /= p;
            }
            f(x);
        }
    }
}

/// Does the quadric have a smooth F_p-point? Enumerates the zeros and checks
/// the polynomial gradient (valid in every characteristic, p prime).
inline bool smooth_point_fp(const symmetroid::QuadricForm& q, std::int64_t p)
{
    bool found = false;
    for_each_point(p, 5, [&](const std::vector<std::int64_t>& x) {
        if (found)
            return;
        std::int64_t val = 0;
        std::array<std::int64_t, 5> grad{};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j) {
                std::int64_t c = symmetroid::mod_u64(q.coeff(i, j), static_cast<std::uint64_t>(p));
                val += c * x[i] * x[j];
                if (i == j) {
                    grad[i] += 2 * c * x[i];
                } else {
                    grad[i] += c * x[j];
                    grad[j] += c * x[i];
                }
            }
        if (mod(val, p) != 0)
            return;
        for (auto g : grad)
            if (mod(g, p) != 0) {
                found = true;
                return;
            }
    });
    return found;
}

/// Determinant by cofactor expansion along the first row.
inline BigInt laplace_det(const std::vector<std::vector<BigInt>>& m)
{
    std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    BigInt acc = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0)
            continue;
        std::vector<std::vector<BigInt>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            sub.push_back(row);
        }
        BigInt term = m[0][c] * laplace_det(sub);
        acc += (c % 2 ? -term : term);
    }
    return acc;
}

inline BigInt leading_minor_at(const symmetroid::IntMatrix& g, std::size_t k)
{
    std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m[i][j] = g(i, j);
    return laplace_det(m);
}

/// Number of k-dimensional subspaces of F_p^n, counted by enumerating
/// reduced row echelon forms (pivot sets and free entries).
inline BigInt count_subspaces(unsigned k, unsigned n, std::uint64_t p)
{
    BigInt total = 0;
    std::vector<unsigned> piv(k);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned start) {
        if (idx == k) {
            // Free entries: row r may be nonzero in non-pivot columns right of its pivot.
            unsigned free = 0;
            for (unsigned r = 0; r < k; ++r)
                for (unsigned c = piv[r] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end())
                        ++free;
            BigInt cnt = 1;
            for (unsigned i = 0; i < free; ++i)
                cnt *= static_cast<unsigned long>(p);
            total += cnt;
            return;
        }
        for (unsigned c = start; c < n; ++c) {
            piv[idx] = c;
            rec(idx + 1, c + 1);
        }
    };
    rec(0, 0);
    return total;
}

} // namespace oracle

#endif // SYMMETROID_TESTS_ORACLES_HPP
