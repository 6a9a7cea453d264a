#ifndef SYMMETROID_NULLSTELLENSATZ_HPP
#define SYMMETROID_NULLSTELLENSATZ_HPP

#include "bigint.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace symmetroid {

/// Multidegree with respect to a partition of the variables into consecutive blocks.
using MultiDegree = std::vector<unsigned>;

/// Generators of an ideal in Z[v_0..v_{n-1}], homogeneous for a block grading.
///
/// With one block this is an ordinary homogeneous ideal defining a subscheme of
/// P^{n-1}; with blocks of sizes (n_1, ..., n_k) it defines a subscheme of
/// P^{n_1-1} x ... x P^{n_k-1}.
class HomIdeal
{
public:
    HomIdeal(std::size_t nvars, std::vector<ZPoly> gens) : HomIdeal(std::vector<std::size_t>{nvars}, std::move(gens)) {}

    HomIdeal(std::vector<std::size_t> blocks, std::vector<ZPoly> gens) : blocks_(std::move(blocks))
    {
        n_ = std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
        for (auto& g : gens) {
            if (g.nvars() != n_)
                throw Error("HomIdeal: generator has wrong number of variables");
            if (g.is_zero())
                continue;
            auto d = multidegree_of(g);
            if (!d)
                throw Error("HomIdeal: generator is not homogeneous for the grading");
            gens_.push_back(std::move(g));
            degs_.push_back(*d);
        }
    }

    std::size_t nvars() const { return n_; }
    const std::vector<std::size_t>& blocks() const { return blocks_; }
    const std::vector<ZPoly>& generators() const { return gens_; }
    const std::vector<MultiDegree>& degrees() const { return degs_; }

    std::optional<MultiDegree> multidegree_of(const ZPoly& f) const
    {
        std::optional<MultiDegree> out;
        for (const auto& [m, c] : f.terms()) {
            MultiDegree d(blocks_.size(), 0);
            std::size_t v = 0;
            for (std::size_t b = 0; b < blocks_.size(); ++b)
                for (std::size_t k = 0; k < blocks_[b]; ++k, ++v)
                    d[b] += m.e[v];
            if (!out)
                out = d;
            else if (*out != d)
                return std::nullopt;
        }
        return out;
    }

    /// All monomials of the given multidegree (descending grevlex within blocks).
    std::vector<Monomial> monomials(const MultiDegree& d) const
    {
        std::vector<Monomial> acc{Monomial{}};
        std::size_t offset = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            auto part = monomials_of_degree(blocks_[b], d[b]);
            std::vector<Monomial> next;
            next.reserve(acc.size() * part.size());
            for (const auto& a : acc)
                for (const auto& m : part) {
                    Monomial s = a;
                    for (std::size_t k = 0; k < blocks_[b]; ++k)
                        s.e[offset + k] = m.e[k];
                    next.push_back(s);
                }
            acc = std::move(next);
            offset += blocks_[b];
        }
        return acc;
    }

    std::size_t count_monomials(const MultiDegree& d) const
    {
        std::size_t total = 1;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            // C(d + n - 1, n - 1)
            std::size_t n = blocks_[b], c = 1;
            for (std::size_t i = 1; i < n; ++i)
                c = c * (d[b] + i) / i;
            total *= c;
        }
        return total;
    }

private:
    std::vector<std::size_t> blocks_;
    std::size_t n_ = 0;
    std::vector<ZPoly> gens_;
    std::vector<MultiDegree> degs_;
};

/// Outcome of an emptiness test.
struct EmptinessCertificate
{
    enum class Scope
    {
        single_prime,
        all_primes
    };

    bool certified = false;
    Scope scope = Scope::single_prime;
    std::uint64_t prime = 0;
    MultiDegree degree;               // degree at which the span test succeeded
    std::size_t monomial_count = 0;   // dimension of that graded piece
    std::size_t rows_used = 0;
    bool saturated_at_2 = false;
    std::vector<BigInt> divisors;     // nontrivial elementary divisors (all-primes scope)
    std::vector<BigInt> exceptional_primes; // primes where the all-primes test does not certify
    std::vector<std::string> log;     // one line per degree tried
};

namespace detail {

/// Incremental row echelon form mod p for long dense rows.
///
/// Pivot rows are stored normalised (leading 1) from their pivot column on.
/// For p < 2^20 the reduction accumulates without intermediate mod: each step
/// adds less than p^2 < 2^40 and a row is touched fewer than 2^24 times.
class ModpEchelon
{
public:
    ModpEchelon(std::uint64_t p, std::size_t ncols) : p_(p), n_(ncols), pivot_(ncols), lazy_(p < (1u << 20)) {}

    std::size_t rank() const { return rank_; }
    bool full() const { return rank_ == n_; }

    /// Reduces the row and stores it if independent; returns whether it was.
    bool insert(std::vector<std::uint64_t> row)
    {
        for (std::size_t c = 0; c < n_; ++c) {
            std::uint64_t a = row[c] % p_;
            if (a == 0)
                continue;
            auto& piv = pivot_[c];
            if (piv.empty()) {
                std::uint64_t inv = power(a, p_ - 2);
                piv.assign(n_ - c, 0);
                for (std::size_t j = c; j < n_; ++j)
                    piv[j - c] = static_cast<std::uint32_t>(row[j] % p_ * inv % p_);
                ++rank_;
                return true;
            }
            std::uint64_t f = p_ - a;
            std::uint64_t* r = row.data() + c;
            const std::uint32_t* q = piv.data();
            std::size_t len = n_ - c;
            if (lazy_) {
                for (std::size_t j = 0; j < len; ++j)
                    r[j] += f * q[j];
            } else {
                for (std::size_t j = 0; j < len; ++j)
                    r[j] = (r[j] + f * q[j]) % p_;
            }
        }
        return false;
    }

private:
    std::uint64_t power(std::uint64_t a, std::uint64_t e) const
    {
        std::uint64_t r = 1;
        a %= p_;
        while (e) {
            if (e & 1)
                r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

    std::uint64_t p_;
    std::size_t n_;
    std::size_t rank_ = 0;
    std::vector<std::vector<std::uint32_t>> pivot_;
    bool lazy_;
};

struct MonomialHash
{
    std::size_t operator()(const Monomial& m) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : m.e)
            h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

/// Rows of the Macaulay matrix in degree d: every generator times every
/// monomial of the complementary degree. Calls sink(row as (column, coeff) pairs).
template <typename Sink>
std::size_t for_each_macaulay_row(const HomIdeal& I, const MultiDegree& d,
                                  const std::unordered_map<Monomial, std::size_t, MonomialHash>& index, Sink sink)
{
    std::size_t count = 0;
    for (std::size_t g = 0; g < I.generators().size(); ++g) {
        const auto& gd = I.degrees()[g];
        MultiDegree rest(d.size());
        bool fits = true;
        for (std::size_t b = 0; b < d.size(); ++b) {
            if (gd[b] > d[b]) {
                fits = false;
                break;
            }
            rest[b] = d[b] - gd[b];
        }
        if (!fits)
            continue;
        for (const auto& mult : I.monomials(rest)) {
            std::vector<std::pair<std::size_t, const BigInt*>> row;
            row.reserve(I.generators()[g].size());
            for (const auto& [m, c] : I.generators()[g].terms())
                row.emplace_back(index.at(m * mult), &c);
            ++count;
            if (!sink(row))
                return count;
        }
    }
    return count;
}

inline std::string degree_string(const MultiDegree& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

} // namespace detail

/// Span test in one multidegree over F_p: true iff every monomial of degree d
/// lies in the ideal's degree-d piece. Fills rank information into `cert`.
inline bool macaulay_full_rank_modp(const HomIdeal& I, const MultiDegree& d, std::uint64_t p,
                                    EmptinessCertificate* cert = nullptr)
{
    auto cols = I.monomials(d);
    std::unordered_map<Monomial, std::size_t, detail::MonomialHash> index;
    index.reserve(cols.size() * 2);
    for (std::size_t i = 0; i < cols.size(); ++i)
        index.emplace(cols[i], i);
    detail::ModpEchelon ech(p, cols.size());
    std::size_t used = detail::for_each_macaulay_row(I, d, index, [&](const auto& row) {
        std::vector<std::uint64_t> dense(cols.size(), 0);
        for (const auto& [c, v] : row)
            dense[c] = mod_u64(*v, p);
        ech.insert(std::move(dense));
        return !ech.full();
    });
    if (cert) {
        cert->monomial_count = cols.size();
        cert->rows_used = used;
        cert->log.push_back("degree " + detail::degree_string(d) + ": rank " + std::to_string(ech.rank()) + " of " +
                            std::to_string(cols.size()) + " mod " + std::to_string(p));
    }
    return ech.full();
}

/// Projective Nullstellensatz over the algebraic closure of F_p, single grading:
/// tries d = max generator degree .. d_max.
inline EmptinessCertificate empty_over_fpbar(const HomIdeal& I, std::uint64_t p, unsigned d_max)
{
    if (!is_prime(p))
        throw Error("empty_over_fpbar: modulus is not prime");
    if (I.blocks().size() != 1)
        throw Error("empty_over_fpbar: use empty_multigraded for block gradings");
    EmptinessCertificate cert;
    cert.prime = p;
    unsigned lo = 0;
    for (const auto& d : I.degrees())
        lo = std::max(lo, d[0]);
    for (unsigned d = std::max(lo, 1u); d <= d_max; ++d) {
        if (macaulay_full_rank_modp(I, {d}, p, &cert)) {
            cert.certified = true;
            cert.degree = {d};
            return cert;
        }
    }
    return cert;
}

/// Multigraded span test over F_p at each degree in `schedule`, in order.
///
/// For a product of projective spaces, full span in any single multidegree
/// already forces the zero set to be empty: a
/// common zero (a_1, ..., a_k) would be a nonzero linear functional (evaluation
/// at the chosen affine representatives) killing every degree-d monomial.
inline EmptinessCertificate empty_multigraded(const HomIdeal& I, std::uint64_t p, const std::vector<MultiDegree>& schedule)
{
    if (!is_prime(p))
        throw Error("empty_multigraded: modulus is not prime");
    EmptinessCertificate cert;
    cert.prime = p;
    for (const auto& d : schedule) {
        if (d.size() != I.blocks().size())
            throw Error("empty_multigraded: degree has wrong number of components");
        if (macaulay_full_rank_modp(I, d, p, &cert)) {
            cert.certified = true;
            cert.degree = d;
            return cert;
        }
    }
    return cert;
}

/// Bigraded schedule (d, d) for d = 1 .. d_max, as used for P^4 x P^4.
inline EmptinessCertificate empty_bihomogeneous(const HomIdeal& I, std::uint64_t p, unsigned d_max)
{
    if (I.blocks().size() != 2)
        throw Error("empty_bihomogeneous: ideal must have two variable blocks");
    std::vector<MultiDegree> schedule;
    for (unsigned d = 1; d <= d_max; ++d)
        schedule.push_back({d, d});
    return empty_multigraded(I, p, schedule);
}

/// Emptiness over every geometric fibre of Spec Z at once (single grading).
///
/// In degree d the Macaulay rows span a sublattice L_d of the degree-d monomial
/// lattice. The zero set over F̄_p is empty as soon as L_d ⊗ F_p is everything,
/// i.e. L_d has full rank and p divides no elementary divisor. With
/// saturate_at_2 the 2-parts of the divisors are discarded, which is the
/// ideal saturated with respect to 2; the certificate then speaks about the
/// 2-saturated scheme and says nothing separate about p = 2.
inline EmptinessCertificate empty_all_primes(const HomIdeal& I, bool saturate_at_2, unsigned d_max)
{
    if (I.blocks().size() != 1)
        throw Error("empty_all_primes: single grading only");
    EmptinessCertificate cert;
    cert.scope = EmptinessCertificate::Scope::all_primes;
    cert.saturated_at_2 = saturate_at_2;
    unsigned lo = 1;
    for (const auto& d : I.degrees())
        lo = std::max(lo, d[0]);
    for (unsigned d = lo; d <= d_max; ++d) {
        auto cols = I.monomials({d});
        std::unordered_map<Monomial, std::size_t, detail::MonomialHash> index;
        for (std::size_t i = 0; i < cols.size(); ++i)
            index.emplace(cols[i], i);
        // Modular pre-screen: full rank mod a large prime is necessary for full rank over Q.
        EmptinessCertificate scratch;
        if (!macaulay_full_rank_modp(I, {d}, 2147483647ull, &scratch)) {
            cert.log.push_back("degree (" + std::to_string(d) + "): rank deficient over Q (" + scratch.log.back() + ")");
            continue;
        }
        std::vector<std::vector<BigInt>> rows;
        detail::for_each_macaulay_row(I, {d}, index, [&](const auto& row) {
            std::vector<BigInt> dense(cols.size(), BigInt(0));
            for (const auto& [c, v] : row)
                dense[c] = *v;
            rows.push_back(std::move(dense));
            return true;
        });
        auto lat = elementary_divisors(rows, cols.size());
        std::vector<BigInt> bad;
        std::vector<BigInt> nontrivial;
        for (auto dv : lat.divisors) {
            if (dv != 1)
                nontrivial.push_back(dv);
            BigInt stripped = saturate_at_2 ? strip_factor(dv, 2) : dv;
            if (stripped != 1)
                bad.push_back(stripped);
        }
        std::string line = "degree (" + std::to_string(d) + "): lattice rank " + std::to_string(lat.rank) + " of " +
                           std::to_string(cols.size()) + ", " + std::to_string(nontrivial.size()) +
                           " nontrivial elementary divisors";
        cert.log.push_back(line);
        if (lat.rank != cols.size())
            continue;
        // Primes dividing a surviving divisor are exceptional at this degree.
        std::vector<BigInt> primes;
        for (auto b : bad) {
            for (BigInt q = 2; q * q <= b; ++q)
                while (b % q == 0) {
                    primes.push_back(q);
                    b /= q;
                }
            if (b > 1)
                primes.push_back(b);
        }
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        cert.degree = {d};
        cert.monomial_count = cols.size();
        cert.rows_used = rows.size();
        cert.divisors = nontrivial;
        cert.exceptional_primes = primes;
        if (primes.empty()) {
            cert.certified = true;
            return cert;
        }
    }
    return cert;
}

} // namespace symmetroid

#endif // SYMMETROID_NULLSTELLENSATZ_HPP
