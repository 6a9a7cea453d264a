#ifndef SYMMETROID_DENSITY_HPP
#define SYMMETROID_DENSITY_HPP

#include "bigint.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"
#include "nullstellensatz.hpp"
#include "pencil.hpp"
#include "quadform.hpp"
#include "upoly.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace symmetroid {

/// Number of F_p-points of the Grassmannian of projective k-planes in P^n,
/// the Gaussian binomial [n+1, k+1]_p.
inline BigInt gaussian_count(unsigned k, unsigned n, std::uint64_t p)
{
    if (k > n)
        throw Error("gaussian_count: need 0 <= k <= n");
    if (!is_prime(p))
        throw Error("gaussian_count: " + std::to_string(p) + " is not prime");
    BigInt q(static_cast<unsigned long>(p));
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i <= k; ++i) {
        num *= ipow(q, n + 1 - i) - 1;
        den *= ipow(q, i + 1) - 1;
    }
    return num / den;
}

/// #B_p: quadrics in P^4(F_p) without a smooth F_p-point (double planes plus
/// conjugate pairs of planes), counted from the formula.
inline BigInt count_bp(std::uint64_t p)
{
    BigInt q(static_cast<unsigned long>(p));
    return gaussian_count(3, 4, p) + gaussian_count(2, 4, p) * (q * q - q) / 2;
}

/// Upper bound for the proportion of 4-planes of quadrics mod p meeting B_p,
/// in closed form.
inline BigRat b_closed_form(const BigInt& x)
{
    BigInt num = ipow(x, 8) + ipow(x, 6) + 2 * ipow(x, 4) + ipow(x, 3) + 2 * x * x + x + 2;
    BigInt den = 2 * ipow(x, 10) + 2 * ipow(x, 5) + 2;
    return make_rat(num, den);
}

inline BigRat b_of_p(std::uint64_t p)
{
    if (!is_prime(p))
        throw Error("b_of_p: " + std::to_string(p) + " is not prime");
    return b_closed_form(BigInt(static_cast<unsigned long>(p)));
}

/// The same bound by counting: planes through a fixed bad quadric, times #B_p,
/// over all planes.
inline BigRat b_of_p_counting(std::uint64_t p)
{
    return make_rat(gaussian_count(3, 13, p) * count_bp(p), gaussian_count(4, 14, p));
}

/// Primes below `bound` by a sieve.
inline std::vector<std::uint64_t> primes_below(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound <= 2)
        return out;
    std::vector<bool> comp(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < bound; j += i)
            comp[j] = true;
    }
    return out;
}

/// Decimal expansion of a rational, truncated toward zero.
inline std::string decimal_string(const BigRat& x, unsigned digits = 10)
{
    BigInt scale = ipow(BigInt(10), digits);
    BigInt n = x.get_num() * scale;
    BigInt q = n / x.get_den();
    std::string sign = q < 0 ? "-" : "";
    if (q < 0)
        q = -q;
    std::string s = q.get_str();
    if (s.size() <= digits)
        s = std::string(digits + 1 - s.size(), '0') + s;
    return sign + s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

/// Certified lower bound for the density of integral 4-planes avoiding every S_p.
struct DensityReport
{
    std::uint64_t cutoff = 0;
    BigRat partial_product;  // prod over p < M of (1 - b(p))
    BigRat tail_constant;    // c >= p^2 b(p) for all p >= M
    BigRat tail_factor;      // 1 - c / (M - 1)
    BigRat final_bound;      // partial_product * tail_factor
    bool monotonicity_certified = false;
    std::vector<std::pair<std::uint64_t, BigRat>> table;
};

namespace detail {

/// Numerator and denominator of p^2 b(p) as polynomials in x.
inline UPoly p2b_num()
{
    return UPoly(std::vector<BigRat>{0, 0, 2, 1, 2, 1, 2, 0, 1, 0, 1});
}

inline UPoly p2b_den()
{
    return UPoly(std::vector<BigRat>{2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2});
}

/// f(g) for univariate f and g, by Horner.
inline UPoly compose(const UPoly& f, const UPoly& g)
{
    UPoly acc;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
        acc = acc * g + UPoly(*it);
    return acc;
}

} // namespace detail

/// Whether f(x) = x^2 b(x) satisfies f(n) > f(n + 1) for every integer n >= from.
///
/// With f = N / D and D > 0 for x > 0, f(x) - f(x+1) has the sign of
/// N(x) D(x+1) - N(x+1) D(x). Substituting x = from + y, nonnegative
/// coefficients (not all zero) prove positivity for y >= 0.
inline bool p2b_decreasing_from(std::uint64_t from)
{
    UPoly n = detail::p2b_num(), d = detail::p2b_den();
    UPoly x = UPoly::x();
    UPoly diff = n * detail::compose(d, x + UPoly(1)) - detail::compose(n, x + UPoly(1)) * d;
    UPoly shifted = detail::compose(diff, x + UPoly(BigRat(static_cast<unsigned long>(from))));
    if (shifted.is_zero())
        return false;
    for (const auto& c : shifted.coeffs())
        if (c < 0)
            return false;
    return true;
}

/// Exact partial Euler product below M and a certified tail bound.
///
/// For p >= M, 1 - b(p) >= 1 - c / p^2 with c = M^2 b(M) >= sup_{n >= M} n^2 b(n)
/// (certified by p2b_decreasing_from), and prod (1 - c/p^2) >= 1 - c sum_{n >= M} 1/n^2
/// >= 1 - c/(M - 1).
inline DensityReport product_lower_bound(std::uint64_t cutoff)
{
    if (cutoff < 100)
        throw Error("product_lower_bound: cutoff must be at least 100");
    DensityReport r;
    r.cutoff = cutoff;
    r.partial_product = 1;
    for (auto p : primes_below(cutoff)) {
        BigRat b = b_of_p(p);
        r.table.emplace_back(p, b);
        r.partial_product *= 1 - b;
    }
    r.monotonicity_certified = p2b_decreasing_from(3);
    if (!r.monotonicity_certified)
        throw Error("product_lower_bound: monotonicity of p^2 b(p) could not be certified");
    BigInt m(static_cast<unsigned long>(cutoff));
    r.tail_constant = BigRat(m * m) * b_closed_form(m);
    r.tail_factor = 1 - r.tail_constant / BigRat(m - 1);
    r.final_bound = r.partial_product * r.tail_factor;
    return r;
}

/// Partial product over a prime range without the tail (any cutoff).
inline BigRat partial_product(std::uint64_t bound_inclusive)
{
    BigRat acc = 1;
    for (auto p : primes_below(bound_inclusive + 1))
        acc *= 1 - b_of_p(p);
    return acc;
}

/// Verdict of the S_p membership scan.
struct SpResult
{
    std::uint64_t p = 0;
    bool member = false;
    bool degenerate_frame = false;      // generators dependent mod p: counted as not in S_p
    std::vector<std::uint64_t> witness; // parameter t of a member without a smooth F_p-point
    std::string method;
};

namespace detail {

using FpGram = std::array<Matrix<std::uint64_t>, 5>;

inline FpGram reduce_grams(const std::array<IntMatrix, 5>& b, const PrimeField& F)
{
    FpGram g;
    for (std::size_t i = 0; i < 5; ++i)
        g[i] = b[i].map([&](const BigInt& v) { return F.from_integer(v); });
    return g;
}

inline Matrix<std::uint64_t> combine(const FpGram& g, const PrimeField& F, const std::vector<std::uint64_t>& t)
{
    Matrix<std::uint64_t> m(5, 5, 0);
    for (std::size_t i = 0; i < 5; ++i)
        if (t[i] != 0)
            for (std::size_t r = 0; r < 5; ++r)
                for (std::size_t c = 0; c < 5; ++c)
                    m(r, c) = F.add(m(r, c), F.mul(t[i], g[i](r, c)));
    return m;
}

/// Odd p: the member with Gram matrix m has no smooth F_p-point iff it has rank 1,
/// or rank 2 with -d_1 d_2 a nonsquare.
inline bool odd_member_bad(const PrimeField& F, const Matrix<std::uint64_t>& m)
{
    std::size_t r = rank_over(F, m);
    if (r >= 3)
        return false;
    if (r <= 1)
        return true;
    auto d = diagonalize(F, m);
    std::vector<std::uint64_t> nz;
    for (auto x : d.diagonal)
        if (x != 0)
            nz.push_back(x);
    return !F.is_square(F.neg(F.mul(nz[0], nz[1])));
}

/// Calls f on one representative of each point of P^{n-1}(F_q), leading 1 first.
template <typename Fn>
bool for_each_projective_point(std::size_t n, std::uint64_t q, Fn f)
{
    std::vector<std::uint64_t> x(n, 0);
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::uint64_t total = 1;
        for (std::size_t k = lead + 1; k < n; ++k)
            total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::fill(x.begin(), x.end(), 0);
            x[lead] = 1;
            std::uint64_t c = code;
            for (std::size_t k = lead + 1; k < n; ++k) {
                x[k] = c % q;
                c /= q;
            }
            if (f(x))
                return true;
        }
    }
    return false;
}

/// p = 2 by enumeration: a member has a smooth F_2-point iff some x has
/// Q(x) = 0 and B x != 0 (the partial derivatives in characteristic 2).
inline std::optional<std::vector<std::uint64_t>> char2_bad_member(const std::array<QuadricForm, 5>& q)
{
    // For each x in P^4(F_2): bit i of qv is Q_i(x), grad[i] the 5 bits of B_i x.
    struct PointData
    {
        unsigned qv;
        std::array<unsigned, 5> grad;
    };
    std::vector<PointData> pts;
    for_each_projective_point(5, 2, [&](const std::vector<std::uint64_t>& x) {
        PointData d{0, {}};
        for (std::size_t i = 0; i < 5; ++i) {
            unsigned v = 0;
            for (std::size_t a = 0; a < 5; ++a)
                for (std::size_t b = a; b < 5; ++b)
                    v ^= static_cast<unsigned>(mod_u64(q[i].coeff(a, b), 2) & x[a] & x[b]);
            d.qv |= v << i;
            unsigned g = 0;
            for (std::size_t k = 0; k < 5; ++k) {
                unsigned bit = 0;
                for (std::size_t j = 0; j < 5; ++j)
                    if (j != k)
                        bit ^= static_cast<unsigned>(mod_u64(q[i].coeff(k, j), 2) & x[j]);
                g |= bit << k;
            }
            d.grad[i] = g;
        }
        pts.push_back(d);
        return false;
    });
    std::optional<std::vector<std::uint64_t>> bad;
    for_each_projective_point(5, 2, [&](const std::vector<std::uint64_t>& t) {
        unsigned tm = 0;
        for (std::size_t i = 0; i < 5; ++i)
            tm |= static_cast<unsigned>(t[i]) << i;
        bool smooth = false;
        for (const auto& d : pts) {
            if (__builtin_popcount(d.qv & tm) % 2)
                continue;
            unsigned g = 0;
            for (std::size_t i = 0; i < 5; ++i)
                if (tm >> i & 1)
                    g ^= d.grad[i];
            if (g) {
                smooth = true;
                break;
            }
        }
        if (!smooth)
            bad = t;
        return !smooth;
    });
    return bad;
}

} // namespace detail

/// Whether the plane spanned by q_0..q_4 mod p lies in S_p, i.e. some member
/// over F_p has no smooth F_p-point.
///
/// "auto" uses the kernel method for odd p: a member of rank <= 2 has a kernel
/// of dimension >= 3, which meets W = span(e_0, e_1, e_2); so every bad t solves
/// sum t_i B_i u = 0 for some u in P(W). p = 2 and "exhaustive" enumerate P^4(F_p).
inline SpResult sp_member(const std::array<QuadricForm, 5>& q, std::uint64_t p, const std::string& method = "auto")
{
    if (!is_prime(p))
        throw Error("sp_member: " + std::to_string(p) + " is not prime");
    SpResult r;
    r.p = p;
    IntMatrix coeffs(5, kQuadricCoeffs, BigInt(0));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            coeffs(i, k) = q[i].coeffs()[k];
    if (fp_rank(coeffs, p) < 5) {
        r.degenerate_frame = true;
        r.method = "degenerate";
        return r;
    }
    if (p == 2) {
        r.method = "exhaustive";
        if (auto w = detail::char2_bad_member(q)) {
            r.member = true;
            r.witness = *w;
        }
        return r;
    }
    PrimeField F(p);
    std::array<IntMatrix, 5> grams;
    for (std::size_t i = 0; i < 5; ++i)
        grams[i] = q[i].gram();
    auto g = detail::reduce_grams(grams, F);
    auto test = [&](const std::vector<std::uint64_t>& t) {
        if (detail::odd_member_bad(F, detail::combine(g, F, t))) {
            r.member = true;
            r.witness = t;
            return true;
        }
        return false;
    };
    if (method == "exhaustive") {
        r.method = "exhaustive";
        detail::for_each_projective_point(5, p, test);
        return r;
    }
    if (method != "auto" && method != "kernel")
        throw Error("sp_member: unknown method '" + method + "'");
    r.method = "kernel";
    detail::for_each_projective_point(3, p, [&](const std::vector<std::uint64_t>& u3) {
        // Columns B_i u for u = (u3, 0, 0).
        Matrix<std::uint64_t> m(5, 5, 0);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t rr = 0; rr < 5; ++rr) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < 3; ++c)
                    acc = F.add(acc, F.mul(g[i](rr, c), u3[c]));
                m(rr, i) = acc;
            }
        auto ker = nullspace_over(F, m);
        if (ker.empty())
            return false;
        // Every point of the projective kernel.
        return detail::for_each_projective_point(ker.size(), p, [&](const std::vector<std::uint64_t>& c) {
            std::vector<std::uint64_t> t(5, 0);
            for (std::size_t k = 0; k < ker.size(); ++k)
                for (std::size_t j = 0; j < 5; ++j)
                    t[j] = F.add(t[j], F.mul(c[k], ker[k][j]));
            return test(t);
        });
    });
    return r;
}

inline SpResult sp_member(const Pencil& pen, std::uint64_t p, const std::string& method = "auto")
{
    return sp_member(pen.quadrics(), p, method);
}

/// SplitMix64 finaliser, used to derive one independent seed per sample index.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// One random integral frame: five quadrics with coefficients in [-N, N].
struct FrameSample
{
    std::array<QuadricForm, 5> quadrics;
    long height = 0;
    bool full_rank = false;              // over Q
    std::vector<std::uint64_t> bad_primes; // primes p <= M with the reduction in S_p
};

inline FrameSample sample_frame(long height, std::uint64_t seed, std::uint64_t index)
{
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    std::uniform_int_distribution<long> dist(-height, height);
    FrameSample s;
    s.height = height;
    IntMatrix coeffs(5, kQuadricCoeffs, BigInt(0));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            coeffs(i, k) = dist(rng);
    for (std::size_t i = 0; i < 5; ++i) {
        QuadricForm q;
        std::size_t k = 0;
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t c = a; c < 5; ++c)
                q.set_coeff(a, c, coeffs(i, k++));
        s.quadrics[i] = q;
    }
    s.full_rank = rank(coeffs) == 5;
    return s;
}

/// Monte Carlo estimate of the proportion of frames outside every S_p, p <= M.
struct MonteCarloReport
{
    long height = 0;
    std::uint64_t cutoff = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t passes = 0;
    std::uint64_t rank_deficient = 0;                 // over Q
    std::vector<std::pair<std::uint64_t, std::uint64_t>> failures_by_prime;
    double estimate = 0;
    double radius95 = 0;        // 1.96 sqrt(phat (1 - phat) / n)
    BigRat product;             // prod_{p <= M} (1 - b(p))
    double product_sigma = 0;   // sqrt(pi (1 - pi) / n) at pi = product
    bool within_band = true;    // estimate >= product - 3 sigma (one-sided)
};

/// Samples are split across `workers` threads by index; each sample draws from
/// its own seed, so the report does not depend on the worker count.
inline MonteCarloReport monte_carlo_density(long height, std::uint64_t cutoff, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers = 1)
{
    if (height < 2)
        throw Error("monte_carlo_density: height must be at least 2");
    MonteCarloReport r;
    r.height = height;
    r.cutoff = cutoff;
    r.samples = samples;
    r.seed = seed;
    auto primes = primes_below(cutoff + 1);
    r.product = partial_product(cutoff);
    if (samples == 0)
        return r;
    std::vector<std::uint8_t> pass(samples, 0), deficient(samples, 0);
    std::vector<std::vector<std::uint8_t>> fail(primes.size(), std::vector<std::uint8_t>(samples, 0));
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            FrameSample s = sample_frame(height, seed, i);
            deficient[i] = !s.full_rank;
            bool ok = true;
            for (std::size_t k = 0; k < primes.size(); ++k)
                if (sp_member(s.quadrics, primes[k]).member) {
                    fail[k][i] = 1;
                    ok = false;
                }
            pass[i] = ok;
        }
    };
    workers = std::max(1u, workers);
    std::vector<std::thread> pool;
    std::uint64_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t b = w * chunk, e = std::min(samples, b + chunk);
        if (b < e)
            pool.emplace_back(work, b, e);
    }
    for (auto& t : pool)
        t.join();
    for (std::uint64_t i = 0; i < samples; ++i) {
        r.passes += pass[i];
        r.rank_deficient += deficient[i];
    }
    for (std::size_t k = 0; k < primes.size(); ++k) {
        std::uint64_t c = 0;
        for (auto v : fail[k])
            c += v;
        r.failures_by_prime.emplace_back(primes[k], c);
    }
    double n = static_cast<double>(samples);
    r.estimate = static_cast<double>(r.passes) / n;
    r.radius95 = 1.96 * std::sqrt(r.estimate * (1 - r.estimate) / n);
    double pi = r.product.get_d();
    r.product_sigma = std::sqrt(pi * (1 - pi) / n);
    r.within_band = r.estimate >= pi - 3 * r.product_sigma;
    return r;
}

/// #B_p by brute force for p in {2, 3}: every quadric of P^14(F_p) is tested
/// for a point with Q(x) = 0 and nonzero gradient B x over P^4(F_p).
inline BigInt census_bp(std::uint64_t p, unsigned workers = 1)
{
    if (p != 2 && p != 3)
        throw Error("census_bp: only p = 2 and p = 3 are supported");
    // Monomial values and gradient contributions at each point of P^4(F_p).
    struct PointTable
    {
        std::array<std::uint8_t, 15> mono;          // x_a x_b mod p, coefficient order
        std::array<std::array<std::uint8_t, 5>, 15> grad; // d(x_a x_b)/dx_k mod p
    };
    std::vector<PointTable> pts;
    detail::for_each_projective_point(5, p, [&](const std::vector<std::uint64_t>& x) {
        PointTable t{};
        std::size_t k = 0;
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = a; b < 5; ++b, ++k) {
                t.mono[k] = static_cast<std::uint8_t>(x[a] * x[b] % p);
                for (std::size_t v = 0; v < 5; ++v) {
                    std::uint64_t g = 0;
                    if (a == b)
                        g = v == a ? 2 * x[a] : 0;
                    else if (v == a)
                        g = x[b];
                    else if (v == b)
                        g = x[a];
                    t.grad[k][v] = static_cast<std::uint8_t>(g % p);
                }
            }
        pts.push_back(t);
        return false;
    });
    // Quadrics with leading coefficient 1: index = position of the leading
    // coefficient, then the free tail in base p.
    std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
    for (std::size_t lead = 0; lead < 15; ++lead) {
        std::uint64_t count = 1;
        for (std::size_t k = lead + 1; k < 15; ++k)
            count *= p;
        jobs.emplace_back(lead, count);
    }
    auto bad_count = [&](std::size_t lead, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t bad = 0;
        std::array<std::uint8_t, 15> c{};
        for (std::uint64_t code = begin; code < end; ++code) {
            c.fill(0);
            c[lead] = 1;
            std::uint64_t v = code;
            for (std::size_t k = lead + 1; k < 15; ++k) {
                c[k] = static_cast<std::uint8_t>(v % p);
                v /= p;
            }
            bool smooth = false;
            for (const auto& t : pts) {
                unsigned q = 0;
                for (std::size_t k = lead; k < 15; ++k)
                    q += c[k] * t.mono[k];
                if (q % p)
                    continue;
                for (std::size_t var = 0; var < 5 && !smooth; ++var) {
                    unsigned g = 0;
                    for (std::size_t k = lead; k < 15; ++k)
                        g += c[k] * t.grad[k][var];
                    smooth = g % p != 0;
                }
                if (smooth)
                    break;
            }
            bad += !smooth;
        }
        return bad;
    };
    workers = std::max(1u, workers);
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (const auto& [lead, count] : jobs) {
                std::uint64_t chunk = (count + workers - 1) / workers;
                std::uint64_t b = w * chunk, e = std::min(count, b + chunk);
                if (b < e)
                    partial[w] += bad_count(lead, b, e);
            }
        });
    for (auto& t : pool)
        t.join();
    std::uint64_t bad = 0;
    for (auto v : partial)
        bad += v;
    return BigInt(static_cast<unsigned long>(bad));
}

/// Exhaustive check of the characteristic-2 smooth-point criterion on the
/// normal form a x0^2 + b x1^2 + c x2^2 + d x3^2 + e x4^2 + f x0x1 + g x2x3:
/// whenever one of f^2c, f^2d, f^2e, f^2g, g^2a, g^2b, g^2e, g^2f is nonzero,
/// the quadric must have a smooth F_q-point.
struct AlbertCheck
{
    std::uint32_t q = 0;
    std::uint64_t forms = 0;
    std::uint64_t forms_with_nonzero_generator = 0;
    std::uint64_t counterexamples = 0;
    std::vector<std::uint32_t> first_counterexample;  // (a, ..., g) as field codes
};

inline AlbertCheck albert_check(std::uint32_t q)
{
    GaloisField F(q);
    if (F.characteristic() != 2)
        throw Error("albert_check: field must have characteristic 2");
    AlbertCheck r;
    r.q = q;
    std::vector<std::vector<std::uint32_t>> points;
    detail::for_each_projective_point(5, q, [&](const std::vector<std::uint64_t>& x) {
        points.emplace_back(x.begin(), x.end());
        return false;
    });
    std::uint64_t total = 1;
    for (int i = 0; i < 7; ++i)
        total *= q;
    std::array<std::uint32_t, 7> v{};
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (auto& x : v) {
            x = static_cast<std::uint32_t>(c % q);
            c /= q;
        }
        auto [a, b, cc, d, e, f, g] = v;
        ++r.forms;
        auto f2 = F.mul(f, f), g2 = F.mul(g, g);
        std::array<std::uint32_t, 8> gens{F.mul(f2, cc), F.mul(f2, d), F.mul(f2, e), F.mul(f2, g),
                                          F.mul(g2, a),  F.mul(g2, b), F.mul(g2, e), F.mul(g2, f)};
        bool nonzero = false;
        for (auto x : gens)
            nonzero = nonzero || x != 0;
        if (!nonzero)
            continue;
        ++r.forms_with_nonzero_generator;
        bool smooth = false;
        for (const auto& x : points) {
            std::uint32_t val = 0;
            std::array<std::uint32_t, 5> sq{};
            for (std::size_t i = 0; i < 5; ++i)
                sq[i] = F.mul(x[i], x[i]);
            val = F.add(val, F.mul(a, sq[0]));
            val = F.add(val, F.mul(b, sq[1]));
            val = F.add(val, F.mul(cc, sq[2]));
            val = F.add(val, F.mul(d, sq[3]));
            val = F.add(val, F.mul(e, sq[4]));
            val = F.add(val, F.mul(f, F.mul(x[0], x[1])));
            val = F.add(val, F.mul(g, F.mul(x[2], x[3])));
            if (val != 0)
                continue;
            // Partials in characteristic 2: (f x1, f x0, g x3, g x2, 0).
            if (F.mul(f, x[1]) || F.mul(f, x[0]) || F.mul(g, x[3]) || F.mul(g, x[2])) {
                smooth = true;
                break;
            }
        }
        if (!smooth) {
            if (r.counterexamples == 0)
                r.first_counterexample.assign(v.begin(), v.end());
            ++r.counterexamples;
        }
    }
    return r;
}

/// The 3x3 minors of B(t), the restriction of the rank <= 2 locus to the pencil.
inline HomIdeal v3_minor_ideal(const Pencil& pen)
{
    std::vector<ZPoly> gens;
    ZPoly zero(IntegerRing{}, 5);
    std::vector<std::vector<std::size_t>> triples;
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
            for (std::size_t c = b + 1; c < 5; ++c)
                triples.push_back({a, b, c});
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (std::size_t j = i; j < triples.size(); ++j) {
            ZPoly m = minor_det(pen.universal_gram(), triples[i], triples[j], zero, zpoly_constant(5, 1));
            if (m.is_zero())
                continue;
            bool dup = false;
            for (const auto& g : gens)
                if (g == m || g == -m) {
                    dup = true;
                    break;
                }
            if (!dup)
                gens.push_back(std::move(m));
        }
    return HomIdeal(5, std::move(gens));
}

/// All-primes emptiness of the pencil's intersection with the (2-saturated)
/// rank <= 2 locus.
inline EmptinessCertificate v3_avoidance(const Pencil& pen, unsigned d_max = 12)
{
    return empty_all_primes(v3_minor_ideal(pen), true, d_max);
}

} // namespace symmetroid

#endif // SYMMETROID_DENSITY_HPP
