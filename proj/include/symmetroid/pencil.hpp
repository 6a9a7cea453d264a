#ifndef SYMMETROID_PENCIL_HPP
#define SYMMETROID_PENCIL_HPP

#include "bigint.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "nullstellensatz.hpp"
#include "quadform.hpp"
#include "upoly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace symmetroid {

/// The linear system spanned by five quadrics Q_0..Q_4 in P^4.
///
/// B(t) = sum t_i B_i is stored as a 5x5 matrix of linear forms in t_0..t_4;
/// det B(t) is the quintic cutting out the discriminant locus H.
class Pencil
{
public:
    explicit Pencil(const std::array<QuadricForm, 5>& q) : q_(q)
    {
        IntMatrix coeffs(5, kQuadricCoeffs, BigInt(0));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
                coeffs(i, k) = q[i].coeffs()[k];
        if (rank(coeffs) != 5)
            throw Error("Pencil: the five quadrics are linearly dependent");
        coeffs_ = coeffs;
        for (std::size_t i = 0; i < 5; ++i)
            b_[i] = q[i].gram();
        ZPoly zero(IntegerRing{}, 5);
        gram_t_ = Matrix<ZPoly>(5, 5, zero);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                for (std::size_t i = 0; i < 5; ++i)
                    if (b_[i](r, c) != 0)
                        gram_t_(r, c) += zpoly_var(5, i).scaled(b_[i](r, c));
        det_ = determinant(gram_t_, zero, zpoly_constant(5, 1));
    }

    const std::array<QuadricForm, 5>& quadrics() const { return q_; }
    const QuadricForm& quadric(std::size_t i) const { return q_.at(i); }
    const IntMatrix& gram(std::size_t i) const { return b_.at(i); }
    const std::array<IntMatrix, 5>& grams() const { return b_; }
    const Matrix<ZPoly>& universal_gram() const { return gram_t_; }
    const ZPoly& discriminant() const { return det_; }
    /// The 5 x 15 coefficient matrix (one row per generator).
    const IntMatrix& coefficient_matrix() const { return coeffs_; }

    /// The member sum t_i Q_i for an integral parameter.
    QuadricForm member(const std::vector<BigInt>& t) const
    {
        if (t.size() != 5)
            throw Error("Pencil::member: need five parameters");
        QuadricForm acc;
        for (std::size_t i = 0; i < 5; ++i)
            if (t[i] != 0)
                acc = acc + q_[i].scaled(t[i]);
        return acc;
    }

    /// B(t) for a rational parameter.
    RatMatrix gram_at(const std::vector<BigRat>& t) const
    {
        if (t.size() != 5)
            throw Error("Pencil::gram_at: need five parameters");
        RatMatrix m(5, 5, BigRat(0));
        for (std::size_t i = 0; i < 5; ++i)
            if (t[i] != 0)
                for (std::size_t r = 0; r < 5; ++r)
                    for (std::size_t c = 0; c < 5; ++c)
                        m(r, c) += t[i] * BigRat(b_[i](r, c));
        return m;
    }

    /// The pencil after the change of variables x -> T x (T integral, unimodular).
    Pencil transformed(const IntMatrix& t) const
    {
        std::array<QuadricForm, 5> q;
        for (std::size_t i = 0; i < 5; ++i)
            q[i] = q_[i].transformed(t);
        return Pencil(q);
    }

    /// Five lines, one polynomial per generator.
    std::string str() const
    {
        std::string s;
        for (const auto& q : q_)
            s += q.str() + "\n";
        return s;
    }

private:
    std::array<QuadricForm, 5> q_;
    std::array<IntMatrix, 5> b_;
    IntMatrix coeffs_;
    Matrix<ZPoly> gram_t_;
    ZPoly det_;
};

inline Pencil universal_gram(const std::array<QuadricForm, 5>& q) { return Pencil(q); }

/// Reads five quadrics (15 integers or a polynomial per line). Blank lines and
/// lines starting with '#' are skipped.
inline Pencil parse_pencil(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<QuadricForm> qs;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        try {
            qs.push_back(parse_quadric(line));
        } catch (const Error& e) {
            throw Error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (qs.size() != 5)
        throw Error("pencil must have exactly 5 quadrics, found " + std::to_string(qs.size()));
    return Pencil({qs[0], qs[1], qs[2], qs[3], qs[4]});
}

/// Polynomial form of a pencil, parseable by parse_pencil.
inline std::string serialize_pencil(const Pencil& p) { return p.str(); }

/// Leading principal minor of size k of B(t).
inline ZPoly leading_minor(const Matrix<ZPoly>& g, std::size_t k)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    return minor_det(g, idx, idx, ZPoly(IntegerRing{}, 5), zpoly_constant(5, 1));
}

/// Restriction of a polynomial in t to the line t = a + s b.
inline UPoly restrict_to_line(const ZPoly& f, const std::vector<BigInt>& a, const std::vector<BigInt>& b)
{
    std::vector<UPoly> vals;
    for (std::size_t i = 0; i < 5; ++i)
        vals.push_back(UPoly(std::vector<BigRat>{BigRat(a[i]), BigRat(b[i])}));
    return f.substitute<UPoly>(vals, UPoly(), [](const BigInt& c) { return UPoly(BigRat(c)); });
}

/// Whether g vanishes on no irreducible component of the hypersurface det = 0,
/// certified on one line: a line meets every component of H over C, so a
/// constant gcd of the two restrictions rules out a shared component.
inline bool nonvanishing_on_hypersurface(const ZPoly& det, const ZPoly& g, std::mt19937_64& rng, int lines = 20)
{
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int k = 0; k < lines; ++k) {
        std::vector<BigInt> a(5), b(5);
        for (std::size_t i = 0; i < 5; ++i) {
            a[i] = dist(rng);
            b[i] = dist(rng);
        }
        UPoly dl = restrict_to_line(det, a, b);
        if (dl.degree() != det.degree())
            continue;
        UPoly gl = restrict_to_line(g, a, b);
        if (gl.is_zero())
            continue;
        if (gcd(dl, gl).degree() == 0)
            return true;
    }
    return false;
}

/// Seeded random unimodular 5x5 matrix: a product of elementary transvections.
inline IntMatrix random_unimodular(std::mt19937_64& rng)
{
    IntMatrix t = IntMatrix::identity(5, 0, 1);
    std::uniform_int_distribution<int> idx(0, 4), coef(-2, 2);
    for (int k = 0; k < 12; ++k) {
        int i = idx(rng), j = idx(rng);
        int c = coef(rng);
        if (i == j || c == 0)
            continue;
        // Column j += c * column i.
        for (std::size_t r = 0; r < 5; ++r)
            t(r, j) += c * t(r, i);
    }
    return t;
}

/// The quaternion representative of alpha: the leading principal minors
/// M_1..M_4 of B(t) and the formal pair (M_2 / M_1^2, M_3 / (M_2 M_1)).
struct AlphaSymbol
{
    std::array<ZPoly, 4> minors;  // M_1, M_2, M_3, M_4
    ZPoly a1, a2, b1, b2;         // M_2, M_1^2, M_3, M_2 M_1
    IntMatrix basis_change;       // identity unless a change of x-basis was needed
    int attempts = 0;             // 0 when the given basis already worked

    /// Concrete pair (a1/a2, b1/b2) at a rational parameter; nullopt when a
    /// numerator or denominator vanishes there.
    std::optional<std::pair<BigRat, BigRat>> evaluate(const std::vector<BigRat>& t) const
    {
        std::vector<BigRat> pt(t);
        QPoly qa1 = to_rational(a1), qa2 = to_rational(a2), qb1 = to_rational(b1), qb2 = to_rational(b2);
        BigRat va1 = qa1.evaluate(pt), va2 = qa2.evaluate(pt), vb1 = qb1.evaluate(pt), vb2 = qb2.evaluate(pt);
        if (va1 == 0 || va2 == 0 || vb1 == 0 || vb2 == 0)
            return std::nullopt;
        return std::make_pair(BigRat(va1 / va2), BigRat(vb1 / vb2));
    }
};

/// Leading principal minors of B(t) with genericity checks.
///
/// Each M_k must vanish on no component of H. If that fails, the x-basis is
/// changed by a seeded random unimodular matrix (up to max_tries times) and the
/// change is recorded.
inline AlphaSymbol alpha_symbol(const Pencil& p, std::uint64_t seed = 1, int max_tries = 100)
{
    std::mt19937_64 rng(seed);
    IntMatrix t = IntMatrix::identity(5, 0, 1);
    for (int attempt = 0; attempt <= max_tries; ++attempt) {
        Pencil cur = attempt == 0 ? p : p.transformed(t);
        AlphaSymbol s;
        bool ok = !cur.discriminant().is_zero();
        for (std::size_t k = 0; k < 4; ++k) {
            s.minors[k] = leading_minor(cur.universal_gram(), k + 1);
            if (ok)
                ok = !s.minors[k].is_zero() && nonvanishing_on_hypersurface(cur.discriminant(), s.minors[k], rng);
        }
        if (ok) {
            s.a1 = s.minors[1];
            s.a2 = s.minors[0] * s.minors[0];
            s.b1 = s.minors[2];
            s.b2 = s.minors[1] * s.minors[0];
            s.basis_change = t;
            s.attempts = attempt;
            return s;
        }
        t = random_unimodular(rng);
    }
    throw Error("alpha_symbol: no change of basis made all leading minors nonzero on H");
}

/// Column 4 of the adjugate: (B_{4,0}, -B_{4,1}, B_{4,2}, -B_{4,3}, B_{4,4}),
/// where B_{4,j} deletes row 4 and column j. On H it spans the kernel of B(t).
inline std::array<ZPoly, 5> cramer_kernel_vector(const Pencil& p)
{
    std::array<ZPoly, 5> v;
    std::vector<std::size_t> rows{0, 1, 2, 3};
    for (std::size_t j = 0; j < 5; ++j) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < 5; ++c)
            if (c != j)
                cols.push_back(c);
        ZPoly m = minor_det(p.universal_gram(), rows, cols, ZPoly(IntegerRing{}, 5), zpoly_constant(5, 1));
        v[j] = (j % 2) ? -m : m;
    }
    return v;
}

/// Verdict of a regularity test at one prime.
struct RegularityCertificate
{
    enum class Verdict
    {
        certified,
        inconclusive,
        violated
    };

    std::uint64_t prime = 0;
    Verdict verdict = Verdict::inconclusive;
    std::size_t coefficient_rank_mod_p = 0; // rank of the 5 x 15 coefficient matrix mod p
    EmptinessCertificate diagonal;          // Q_0 = ... = Q_4 = 0 in P^4
    EmptinessCertificate singular_locus;    // bilinear forms + Jacobian minors in P^4 x P^4
    bool diagonal_empty = false;
    bool singular_locus_empty = false;
    std::vector<std::string> witness;       // explicit bad point when one was found
    std::string reasoning;

    static std::string verdict_name(Verdict v)
    {
        switch (v) {
        case Verdict::certified:
            return "certified";
        case Verdict::violated:
            return "violated";
        default:
            return "inconclusive";
        }
    }
};

/// Ideal of the singular locus of the intersection of the five (1,1)-divisors
/// B_i(x, y) = 0 in P^4 x P^4: the bilinear forms and the nonzero 5x5 minors
/// of the 5 x 10 Jacobian whose row i is (B_i y, B_i x).
inline HomIdeal singular_locus_ideal(const Pencil& p)
{
    const std::size_t n = 10;
    auto var = [&](std::size_t i) { return zpoly_var(n, i); };
    std::vector<ZPoly> gens;
    for (std::size_t i = 0; i < 5; ++i) {
        ZPoly f(IntegerRing{}, n);
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 0; b < 5; ++b)
                if (p.gram(i)(a, b) != 0)
                    f += (var(a) * var(5 + b)).scaled(p.gram(i)(a, b));
        gens.push_back(f);
    }
    ZPoly zero(IntegerRing{}, n);
    Matrix<ZPoly> jac(5, 10, zero);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t j = 0; j < 5; ++j) {
                const BigInt& c = p.gram(i)(k, j);
                if (c == 0)
                    continue;
                jac(i, k) += var(5 + j).scaled(c);
                jac(i, 5 + k) += var(j).scaled(c);
            }
    std::vector<std::size_t> rows{0, 1, 2, 3, 4};
    for (unsigned mask = 0; mask < 1024; ++mask) {
        if (__builtin_popcount(mask) != 5)
            continue;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < 10; ++c)
            if (mask >> c & 1)
                cols.push_back(c);
        ZPoly m = minor_det(jac, rows, cols, zero, zpoly_constant(n, 1));
        if (!m.is_zero())
            gens.push_back(std::move(m));
    }
    return HomIdeal(std::vector<std::size_t>{5, 5}, std::move(gens));
}

/// Degrees tried for the singular-locus span test: (d, d), (d + 1, d),
/// (d, d + 1) for d = 3, 4, ... within (cap, cap). Lopsided degrees such as
/// (4, 2) never reached full rank on the examples and are skipped.
inline std::vector<MultiDegree> bidegree_schedule(unsigned cap)
{
    std::vector<MultiDegree> s;
    for (unsigned d = 3; d <= cap; ++d) {
        s.push_back({d, d});
        if (d + 1 <= cap) {
            s.push_back({d + 1, d});
            s.push_back({d, d + 1});
        }
    }
    return s;
}

namespace detail {

/// Looks for a common zero of Q_0..Q_4 over F_p (a point of the diagonal).
inline std::optional<std::vector<std::uint64_t>> diagonal_witness(const Pencil& p, const PrimeField& F)
{
    std::uint64_t q = F.size();
    std::vector<std::uint64_t> x(5, 0);
    for (std::size_t lead = 0; lead < 5; ++lead) {
        std::uint64_t total = 1;
        for (std::size_t k = lead + 1; k < 5; ++k)
            total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::fill(x.begin(), x.end(), 0);
            x[lead] = 1;
            std::uint64_t c = code;
            for (std::size_t k = lead + 1; k < 5; ++k) {
                x[k] = c % q;
                c /= q;
            }
            bool all = true;
            for (std::size_t i = 0; i < 5 && all; ++i) {
                std::uint64_t acc = 0;
                for (std::size_t a = 0; a < 5; ++a)
                    for (std::size_t b = a; b < 5; ++b)
                        acc = F.add(acc, F.mul(F.from_integer(p.quadric(i).coeff(a, b)), F.mul(x[a], x[b])));
                all = acc == 0;
            }
            if (all)
                return x;
        }
    }
    return std::nullopt;
}

/// Looks for a singular point of the (1,1)-intersection over F_p: a parameter
/// l with corank >= 2 and x, y in ker B(l), independent, with x^T B_i y = 0.
inline std::optional<std::string> singular_witness(const Pencil& p, const PrimeField& F)
{
    std::uint64_t q = F.size();
    std::array<Matrix<std::uint64_t>, 5> b;
    for (std::size_t i = 0; i < 5; ++i)
        b[i] = p.gram(i).map([&](const BigInt& v) { return F.from_integer(v); });
    std::vector<std::uint64_t> l(5, 0);
    for (std::size_t lead = 0; lead < 5; ++lead) {
        std::uint64_t total = 1;
        for (std::size_t k = lead + 1; k < 5; ++k)
            total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::fill(l.begin(), l.end(), 0);
            l[lead] = 1;
            std::uint64_t c = code;
            for (std::size_t k = lead + 1; k < 5; ++k) {
                l[k] = c % q;
                c /= q;
            }
            Matrix<std::uint64_t> m(5, 5, 0);
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t r = 0; r < 5; ++r)
                    for (std::size_t s = 0; s < 5; ++s)
                        m(r, s) = F.add(m(r, s), F.mul(l[i], b[i](r, s)));
            auto ker = nullspace_over(F, m);
            if (ker.size() < 2)
                continue;
            // Pairs x = k0 + a k1 (or k1), y = k0 + c k1 (or k1), x != y projectively.
            auto combo = [&](std::uint64_t a) {
                std::vector<std::uint64_t> v(5);
                for (std::size_t j = 0; j < 5; ++j)
                    v[j] = a == q ? ker[1][j] : F.add(ker[0][j], F.mul(a, ker[1][j]));
                return v;
            };
            for (std::uint64_t a = 0; a <= q; ++a)
                for (std::uint64_t c2 = a + 1; c2 <= q; ++c2) {
                    auto x = combo(a), y = combo(c2);
                    bool ok = true;
                    for (std::size_t i = 0; i < 5 && ok; ++i) {
                        std::uint64_t acc = 0;
                        for (std::size_t r = 0; r < 5; ++r)
                            for (std::size_t s = 0; s < 5; ++s)
                                acc = F.add(acc, F.mul(x[r], F.mul(b[i](r, s), y[s])));
                        ok = acc == 0;
                    }
                    if (ok) {
                        auto fmt = [](const std::vector<std::uint64_t>& v) {
                            std::string s = "(";
                            for (std::size_t j = 0; j < v.size(); ++j)
                                s += (j ? ":" : "") + std::to_string(v[j]);
                            return s + ")";
                        };
                        return "singular point x=" + fmt(x) + " y=" + fmt(y) + " with kernel member t=" + fmt(l) +
                               " over F_" + std::to_string(q);
                    }
                }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Certifies over the algebraic closure of F_p that (a) Q_0..Q_4 have no common
/// zero (the (1,1)-intersection misses the diagonal) and (b) the intersection
/// is smooth. Both loci are cut out by equations over Z, so their images in
/// Spec Z are closed; missing the fibre at p they miss the generic fibre too.
inline RegularityCertificate regularity_certificate(const Pencil& p, std::uint64_t prime, unsigned diag_dmax = 6,
                                                    unsigned bi_cap = 4)
{
    if (!is_prime(prime))
        throw Error("regularity_certificate: " + std::to_string(prime) + " is not prime");
    RegularityCertificate cert;
    cert.prime = prime;
    cert.coefficient_rank_mod_p = fp_rank(p.coefficient_matrix(), prime);
    std::vector<ZPoly> qs;
    for (const auto& q : p.quadrics())
        qs.push_back(q.to_poly());
    HomIdeal diag(5, qs);
    cert.diagonal = empty_over_fpbar(diag, prime, diag_dmax);
    cert.diagonal_empty = cert.diagonal.certified;
    if (cert.diagonal_empty) {
        HomIdeal sing = singular_locus_ideal(p);
        cert.singular_locus = empty_multigraded(sing, prime, bidegree_schedule(bi_cap));
        cert.singular_locus_empty = cert.singular_locus.certified;
    }
    if (cert.diagonal_empty && cert.singular_locus_empty && cert.coefficient_rank_mod_p == 5) {
        cert.verdict = RegularityCertificate::Verdict::certified;
        cert.reasoning = "no common zero of the quadrics and no singular point of the (1,1)-intersection over the "
                         "algebraic closure of F_" + std::to_string(prime) +
                         "; both loci are closed over Z, so the rational fibre is regular";
        return cert;
    }
    PrimeField F(prime);
    if (!cert.diagonal_empty) {
        if (auto w = detail::diagonal_witness(p, F)) {
            std::string s = "common zero of the quadrics (";
            for (std::size_t j = 0; j < 5; ++j)
                s += (j ? ":" : "") + std::to_string((*w)[j]);
            cert.witness.push_back(s + ") over F_" + std::to_string(prime));
        }
    } else if (!cert.singular_locus_empty) {
        if (auto w = detail::singular_witness(p, F))
            cert.witness.push_back(*w);
    }
    if (!cert.witness.empty()) {
        cert.verdict = RegularityCertificate::Verdict::violated;
        cert.reasoning = "the reduction mod " + std::to_string(prime) +
                         " is not regular (explicit witness); says nothing about the rational fibre";
    } else {
        cert.verdict = RegularityCertificate::Verdict::inconclusive;
        cert.reasoning = "span test did not reach full rank within the degree caps and no F_p witness was found";
    }
    return cert;
}

/// Tries the primes in order and returns the first certificate, or the last
/// attempt when none succeeds.
inline RegularityCertificate find_regularity_certificate(const Pencil& p, const std::vector<std::uint64_t>& primes,
                                                         std::vector<RegularityCertificate>* attempts = nullptr)
{
    RegularityCertificate last;
    for (auto q : primes) {
        last = regularity_certificate(p, q);
        if (attempts)
            attempts->push_back(last);
        if (last.verdict == RegularityCertificate::Verdict::certified)
            return last;
    }
    return last;
}

/// A point of X_P from a singular member: the pair (v, w).
struct XPoint
{
    std::vector<BigInt> v;
    std::vector<BigInt> w;
    std::vector<std::vector<BigInt>> solution_basis; // all w with w^T B_i v = 0
    bool degenerate = false;                         // w proportional to v
    bool bilinear_vanishing = false;                 // w^T B_i v = 0 for all i, checked exactly
};

/// Given a member B(t) with B(t) v = 0, finds w != v with w^T B_i v = 0 for
/// all i: the rows (B_i v)^T satisfy sum t_i (B_i v) = 0, so they span at most
/// a 4-dimensional space and have a nonzero common orthogonal vector.
inline XPoint x_point_from_singular_member(const Pencil& p, const std::vector<BigRat>& t, const std::vector<BigRat>& v)
{
    if (v.size() != 5 || t.size() != 5)
        throw Error("x_point: need five coordinates");
    bool vz = true;
    for (const auto& a : v)
        vz = vz && a == 0;
    if (vz)
        throw Error("x_point: zero kernel vector");
    RatMatrix bt = p.gram_at(t);
    for (auto& c : bt * v)
        if (c != 0)
            throw Error("x_point: v is not in the kernel of the member");
    RatMatrix rows(5, 5, BigRat(0));
    for (std::size_t i = 0; i < 5; ++i) {
        RatMatrix bi = p.gram(i).map([](const BigInt& x) { return BigRat(x); });
        auto bv = bi * v;
        for (std::size_t j = 0; j < 5; ++j)
            rows(i, j) = bv[j];
    }
    auto basis = nullspace(rows);
    XPoint out;
    out.v = primitive_integer_vector(v);
    for (const auto& b : basis)
        out.solution_basis.push_back(primitive_integer_vector(b));
    // Prefer a basis vector not proportional to v.
    auto proportional = [](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a[i] * b[j] != a[j] * b[i])
                    return false;
        return true;
    };
    out.degenerate = true;
    for (const auto& w : out.solution_basis)
        if (!proportional(w, out.v)) {
            out.w = w;
            out.degenerate = false;
            break;
        }
    if (out.degenerate && !out.solution_basis.empty())
        out.w = out.solution_basis.front();
    out.bilinear_vanishing = !out.w.empty();
    for (std::size_t i = 0; i < 5 && out.bilinear_vanishing; ++i) {
        BigInt acc = 0;
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                acc += out.w[r] * p.gram(i)(r, c) * out.v[c];
        out.bilinear_vanishing = acc == 0;
    }
    return out;
}

} // namespace symmetroid

#endif // SYMMETROID_PENCIL_HPP
