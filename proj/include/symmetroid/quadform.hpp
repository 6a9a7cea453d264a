#ifndef SYMMETROID_QUADFORM_HPP
#define SYMMETROID_QUADFORM_HPP

#include "bigint.hpp"
#include "finite_field.hpp"
#include "localfields.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symmetroid {

constexpr std::size_t kQuadricVars = 5;
constexpr std::size_t kQuadricCoeffs = 15;

/// Integral quadratic form sum_{i<=j} c_ij x_i x_j in five variables.
///
/// Coefficients are kept in the order (0,0),(0,1),...,(0,4),(1,1),...,(4,4).
/// The Gram matrix has B_ii = 2 c_ii and B_ij = B_ji = c_ij, so x^T B x = 2 Q(x).
class QuadricForm
{
public:
    QuadricForm() { c_.fill(BigInt(0)); }
    explicit QuadricForm(const std::array<BigInt, kQuadricCoeffs>& c) : c_(c) {}

    static std::size_t index(std::size_t i, std::size_t j)
    {
        if (i > j)
            std::swap(i, j);
        if (j >= kQuadricVars)
            throw Error("QuadricForm: index out of range");
        // Row i starts after 5 + 4 + ... entries.
        return i * kQuadricVars - i * (i - 1) / 2 + (j - i);
    }

    const BigInt& coeff(std::size_t i, std::size_t j) const { return c_[index(i, j)]; }
    void set_coeff(std::size_t i, std::size_t j, const BigInt& v) { c_[index(i, j)] = v; }
    const std::array<BigInt, kQuadricCoeffs>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (x != 0)
                return false;
        return true;
    }

    IntMatrix gram() const
    {
        IntMatrix b(kQuadricVars, kQuadricVars, BigInt(0));
        for (std::size_t i = 0; i < kQuadricVars; ++i)
            for (std::size_t j = i; j < kQuadricVars; ++j) {
                if (i == j)
                    b(i, i) = 2 * coeff(i, i);
                else
                    b(i, j) = b(j, i) = coeff(i, j);
            }
        return b;
    }

    static QuadricForm from_gram(const IntMatrix& b)
    {
        QuadricForm q;
        for (std::size_t i = 0; i < kQuadricVars; ++i)
            for (std::size_t j = i; j < kQuadricVars; ++j) {
                if (i == j) {
                    if (b(i, i) % 2 != 0)
                        throw Error("QuadricForm: Gram matrix has odd diagonal");
                    q.set_coeff(i, i, b(i, i) / 2);
                } else {
                    if (b(i, j) != b(j, i))
                        throw Error("QuadricForm: Gram matrix not symmetric");
                    q.set_coeff(i, j, b(i, j));
                }
            }
        return q;
    }

    ZPoly to_poly() const
    {
        ZPoly f(IntegerRing{}, kQuadricVars);
        for (std::size_t i = 0; i < kQuadricVars; ++i)
            for (std::size_t j = i; j < kQuadricVars; ++j)
                f.add_term(Monomial::var(i) * Monomial::var(j), coeff(i, j));
        return f;
    }

    static QuadricForm from_poly(const ZPoly& f)
    {
        if (f.nvars() != kQuadricVars)
            throw Error("QuadricForm: polynomial must be in five variables");
        QuadricForm q;
        for (const auto& [m, c] : f.terms()) {
            if (m.degree() != 2)
                throw Error("QuadricForm: polynomial is not a quadratic form");
            std::size_t i = kQuadricVars, j = kQuadricVars;
            for (std::size_t k = 0; k < kQuadricVars; ++k)
                for (unsigned e = 0; e < m.e[k]; ++e)
                    (i == kQuadricVars ? i : j) = k;
            q.set_coeff(i, j, c);
        }
        return q;
    }

    template <typename T>
    T evaluate(const std::vector<T>& x) const
    {
        T acc = 0;
        for (std::size_t i = 0; i < kQuadricVars; ++i)
            for (std::size_t j = i; j < kQuadricVars; ++j)
                if (coeff(i, j) != 0)
                    acc += T(coeff(i, j)) * x[i] * x[j];
        return acc;
    }

    /// The form x -> Q(T x).
    QuadricForm transformed(const IntMatrix& t) const
    {
        IntMatrix b = t.transpose() * gram() * t;
        return from_gram(b);
    }

    QuadricForm operator+(const QuadricForm& o) const
    {
        QuadricForm r;
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    QuadricForm scaled(const BigInt& s) const
    {
        QuadricForm r;
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            r.c_[k] = c_[k] * s;
        return r;
    }

    bool operator==(const QuadricForm& o) const { return c_ == o.c_; }
    bool operator!=(const QuadricForm& o) const { return c_ != o.c_; }

    /// Polynomial string in x0..x4 (canonical order).
    std::string str() const { return to_string(to_poly(), "x"); }

    /// The 15 coefficients separated by spaces.
    std::string coeff_line() const
    {
        std::string s;
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            s += (k ? " " : "") + c_[k].get_str();
        return s;
    }

private:
    std::array<BigInt, kQuadricCoeffs> c_;
};

/// Reads a quadric from 15 whitespace-separated integers or a polynomial in x0..x4.
inline QuadricForm parse_quadric(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    if (tokens.empty())
        throw Error("parse_quadric: empty line");
    bool all_ints = true;
    for (const auto& t : tokens) {
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size())
            all_ints = false;
        for (std::size_t k = start; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k])))
                all_ints = false;
    }
    if (all_ints && tokens.size() > 1) {
        if (tokens.size() != kQuadricCoeffs)
            throw Error("parse_quadric: expected 15 integers, got " + std::to_string(tokens.size()));
        std::array<BigInt, kQuadricCoeffs> c;
        for (std::size_t k = 0; k < kQuadricCoeffs; ++k)
            c[k] = BigInt(tokens[k][0] == '+' ? tokens[k].substr(1) : tokens[k]);
        return QuadricForm(c);
    }
    return QuadricForm::from_poly(parse_polynomial(line, "x", kQuadricVars));
}

/// The field over which a form is classified.
struct FieldSpec
{
    enum class Kind
    {
        rationals,
        reals,
        finite,
        padic
    };

    Kind kind = Kind::rationals;
    std::uint64_t order = 0; // q for finite fields, p for Q_p

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec reals() { return {Kind::reals, 0}; }
    static FieldSpec finite(std::uint64_t q)
    {
        GaloisField check(static_cast<std::uint32_t>(q));
        (void)check;
        return {Kind::finite, q};
    }
    static FieldSpec padic(std::uint64_t p)
    {
        if (!is_prime(p))
            throw Error("FieldSpec: Q_p needs a prime");
        return {Kind::padic, p};
    }

    /// "Q", "R", "F<q>", "Q<p>".
    static FieldSpec parse(const std::string& s)
    {
        if (s == "Q" || s == "QQ")
            return rationals();
        if (s == "R" || s == "RR" || s == "inf")
            return reals();
        if (s.size() > 1 && (s[0] == 'F' || s[0] == 'Q'))
            return s[0] == 'F' ? finite(std::stoull(s.substr(1))) : padic(std::stoull(s.substr(1)));
        throw Error("FieldSpec: cannot parse '" + s + "'");
    }

    std::string str() const
    {
        switch (kind) {
        case Kind::rationals:
            return "Q";
        case Kind::reals:
            return "R";
        case Kind::finite:
            return "F" + std::to_string(order);
        case Kind::padic:
            return "Q" + std::to_string(order);
        }
        return "?";
    }

    std::uint64_t characteristic() const
    {
        if (kind != Kind::finite)
            return 0;
        for (std::uint64_t d = 2; d <= order; ++d)
            if (order % d == 0)
                return d;
        return order;
    }
};

/// Congruence diagonalisation T^T B T = diag(d) over a field of characteristic != 2.
template <typename V>
struct Diagonalization
{
    Matrix<V> transform;  // columns are the new basis vectors
    std::vector<V> diagonal;
};

/// Symmetric Gaussian elimination over a field (interface of PrimeField/RationalRing).
/// The field must have characteristic != 2.
template <typename Field>
Diagonalization<typename Field::value_type> diagonalize(const Field& F, Matrix<typename Field::value_type> b)
{
    using V = typename Field::value_type;
    std::size_t n = b.rows();
    Matrix<V> t = Matrix<V>::identity(n, F.zero(), F.one());
    // Column operation on T plus the matching congruence on B: e_dst += f e_src.
    auto add_multiple = [&](std::size_t dst, std::size_t src, const V& f) {
        for (std::size_t i = 0; i < n; ++i)
            t(i, dst) = F.add(t(i, dst), F.mul(f, t(i, src)));
        for (std::size_t i = 0; i < n; ++i)
            b(i, dst) = F.add(b(i, dst), F.mul(f, b(i, src)));
        for (std::size_t j = 0; j < n; ++j)
            b(dst, j) = F.add(b(dst, j), F.mul(f, b(src, j)));
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        t.swap_cols(i, j);
        b.swap_rows(i, j);
        b.swap_cols(i, j);
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n && piv == n; ++i)
            if (!F.is_zero(b(i, i)))
                piv = i;
        if (piv == n) {
            // No usable diagonal entry: create one from an off-diagonal pair.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!F.is_zero(b(i, j))) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n)
                break;
            add_multiple(pi, pj, F.one());
            piv = pi;
        }
        swap(k, piv);
        V inv = F.inv(b(k, k));
        for (std::size_t j = k + 1; j < n; ++j) {
            if (F.is_zero(b(k, j)))
                continue;
            add_multiple(j, k, F.neg(F.mul(b(k, j), inv)));
        }
    }
    Diagonalization<V> d{t, {}};
    for (std::size_t i = 0; i < n; ++i)
        d.diagonal.push_back(b(i, i));
    return d;
}

/// Classification record of a quadric over a chosen field.
struct FormClassification
{
    enum class RankTwoType
    {
        not_applicable,
        split,
        nonsplit
    };

    FieldSpec field;
    int rank = 0;
    std::vector<std::vector<BigRat>> kernel;              // over Q, R, Q_p
    std::vector<std::vector<std::uint32_t>> kernel_fq;    // over F_q (encoded elements)
    std::optional<std::array<int, 3>> signature;          // (n+, n-, n0) over R and Q
    RankTwoType rank_two = RankTwoType::not_applicable;
    std::optional<Diagonalization<BigRat>> diagonalization;
    std::optional<Diagonalization<std::uint32_t>> diagonalization_fq;
    std::optional<SquareClass> base_discriminant;         // rank-4 base over Q_p or R
    bool smooth_point = false;
};

namespace detail {

inline RatMatrix to_rat(const IntMatrix& m)
{
    return m.map([](const BigInt& x) { return BigRat(x); });
}

/// Nonzero diagonal entries of a rational diagonalisation.
inline std::vector<BigRat> nonzero_part(const std::vector<BigRat>& d)
{
    std::vector<BigRat> out;
    for (const auto& x : d)
        if (x != 0)
            out.push_back(x);
    return out;
}

/// Gram matrix over F_q; entries reduced through the prime subfield.
inline Matrix<std::uint32_t> gram_fq(const QuadricForm& q, const GaloisField& F)
{
    IntMatrix b = q.gram();
    return b.map([&](const BigInt& x) { return F.from_integer(x); });
}

inline std::uint32_t eval_fq(const QuadricForm& q, const GaloisField& F, const std::vector<std::uint32_t>& x)
{
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < kQuadricVars; ++i)
        for (std::size_t j = i; j < kQuadricVars; ++j) {
            std::uint32_t c = F.from_integer(q.coeff(i, j));
            if (c)
                acc = F.add(acc, F.mul(c, F.mul(x[i], x[j])));
        }
    return acc;
}

/// Characteristic-2 structure: quadric rank and the rank-2 split type.
///
/// The radical R of the polar form B carries the map v -> Q(v), which is
/// additive and Frobenius-semilinear, so its zero set R0 is a subspace. The
/// quadric is a cone with vertex P(R0) over a nondegenerate quadric in
/// V / R0, whose dimension is the quadric rank.
inline void classify_char2(const QuadricForm& q, const GaloisField& F, FormClassification& out)
{
    auto b = gram_fq(q, F);
    auto rad = nullspace_over(F, b);
    // On the radical Q(sum a_k r_k) = (sum a_k s_k)^2 with s_k = sqrt(Q(r_k)),
    // so R0 is the kernel of the linear form a -> sum a_k s_k.
    std::vector<std::uint32_t> roots;
    for (const auto& r : rad)
        roots.push_back(F.sqrt(eval_fq(q, F, r)));
    std::size_t piv = rad.size();
    for (std::size_t k = 0; k < rad.size(); ++k)
        if (roots[k] != 0) {
            piv = k;
            break;
        }
    std::vector<std::vector<std::uint32_t>> r0;
    for (std::size_t k = 0; k < rad.size(); ++k) {
        if (k == piv)
            continue;
        if (piv == rad.size()) {
            r0.push_back(rad[k]);
            continue;
        }
        auto c = F.mul(roots[k], F.inv(roots[piv]));
        std::vector<std::uint32_t> v(kQuadricVars);
        for (std::size_t i = 0; i < kQuadricVars; ++i)
            v[i] = F.add(rad[k][i], F.mul(c, rad[piv][i]));
        r0.push_back(v);
    }
    out.kernel_fq = r0;
    out.rank = static_cast<int>(kQuadricVars - r0.size());
    if (out.rank == 2) {
        // Restrict Q to a complement of R0 (two vectors) and look for a zero on P^1.
        std::vector<std::vector<std::uint32_t>> comp;
        std::vector<std::vector<std::uint32_t>> current = r0;
        for (std::size_t e = 0; e < kQuadricVars && comp.size() < 2; ++e) {
            std::vector<std::uint32_t> v(kQuadricVars, 0);
            v[e] = 1;
            auto trial = current;
            trial.push_back(v);
            Matrix<std::uint32_t> tm(trial.size(), kQuadricVars, 0);
            for (std::size_t i = 0; i < trial.size(); ++i)
                for (std::size_t j = 0; j < kQuadricVars; ++j)
                    tm(i, j) = trial[i][j];
            if (rank_over(F, tm) == trial.size()) {
                current = trial;
                comp.push_back(v);
            }
        }
        bool split = false;
        for (std::uint32_t a = 0; a <= F.size() && !split; ++a) {
            // Points (1 : a) for a in F_q and (0 : 1) encoded as a == q.
            std::vector<std::uint32_t> x(kQuadricVars, 0);
            for (std::size_t i = 0; i < kQuadricVars; ++i)
                x[i] = a == F.size() ? comp[1][i] : F.add(comp[0][i], F.mul(a, comp[1][i]));
            split = eval_fq(q, F, x) == 0;
        }
        out.rank_two = split ? FormClassification::RankTwoType::split : FormClassification::RankTwoType::nonsplit;
    }
    out.smooth_point = out.rank >= 3 || (out.rank == 2 && out.rank_two == FormClassification::RankTwoType::split);
}

inline void classify_odd_fq(const QuadricForm& q, const GaloisField& F, FormClassification& out)
{
    auto b = gram_fq(q, F);
    auto d = diagonalize(F, b);
    std::vector<std::uint32_t> nz;
    for (auto x : d.diagonal)
        if (x)
            nz.push_back(x);
    out.rank = static_cast<int>(nz.size());
    out.kernel_fq = nullspace_over(F, b);
    out.diagonalization_fq = d;
    if (out.rank == 2) {
        bool split = F.is_square(F.neg(F.mul(nz[0], nz[1])));
        out.rank_two = split ? FormClassification::RankTwoType::split : FormClassification::RankTwoType::nonsplit;
    }
    out.smooth_point = out.rank >= 3 || (out.rank == 2 && out.rank_two == FormClassification::RankTwoType::split);
}

} // namespace detail

/// Rank, kernel, diagonalisation and smooth-point data of Q over the chosen field.
inline FormClassification classify(const QuadricForm& q, const FieldSpec& field)
{
    FormClassification out;
    out.field = field;
    if (field.kind == FieldSpec::Kind::finite) {
        GaloisField F(static_cast<std::uint32_t>(field.order));
        if (F.characteristic() == 2)
            detail::classify_char2(q, F, out);
        else
            detail::classify_odd_fq(q, F, out);
        return out;
    }
    RatMatrix b = detail::to_rat(q.gram());
    auto d = diagonalize(RationalRing{}, b);
    auto nz = detail::nonzero_part(d.diagonal);
    out.rank = static_cast<int>(nz.size());
    out.kernel = nullspace(b);
    out.diagonalization = d;
    int pos = 0, neg = 0;
    for (const auto& x : nz)
        (x > 0 ? pos : neg) += 1;
    out.signature = std::array<int, 3>{pos, neg, static_cast<int>(kQuadricVars) - pos - neg};
    BigRat disc = 1;
    for (const auto& x : nz)
        disc *= x;
    switch (field.kind) {
    case FieldSpec::Kind::rationals:
        // Global isotropy is out of scope; record real-place behaviour only.
        out.smooth_point = out.rank >= 2 && pos > 0 && neg > 0;
        break;
    case FieldSpec::Kind::reals:
        out.smooth_point = out.rank >= 2 && pos > 0 && neg > 0;
        if (out.rank == 4)
            out.base_discriminant = square_class(disc, Place::infinity());
        break;
    case FieldSpec::Kind::padic: {
        Place v = Place::prime(field.order);
        out.smooth_point = out.rank >= 2 && is_isotropic_diagonal(nz, v);
        if (out.rank == 4)
            out.base_discriminant = square_class(disc, v);
        break;
    }
    default:
        break;
    }
    return out;
}

/// Whether the projective quadric Q = 0 has a smooth point over the field.
///
/// A smooth point exists iff the nondegenerate base of the cone is isotropic
/// (over F_q: not a double plane and not a conjugate pair of planes).
inline bool has_smooth_point(const QuadricForm& q, const FieldSpec& field)
{
    if (q.is_zero())
        throw Error("has_smooth_point: zero form");
    auto c = classify(q, field);
    if (field.kind == FieldSpec::Kind::rationals)
        throw Error("has_smooth_point: global fields are not supported; choose R, Q_p or F_q");
    return c.smooth_point;
}

/// Reference implementation over F_q by enumerating P^4(F_q): a point with
/// Q(x) = 0 and gradient B x != 0. The gradient formula also holds in
/// characteristic 2, where the diagonal of B vanishes.
inline bool has_smooth_point_by_enumeration(const QuadricForm& q, std::uint32_t order)
{
    GaloisField F(order);
    auto b = detail::gram_fq(q, F);
    std::vector<std::uint32_t> x(kQuadricVars, 0);
    std::uint32_t qn = static_cast<std::uint32_t>(F.size());
    for (std::size_t lead = 0; lead < kQuadricVars; ++lead) {
        std::size_t free_count = kQuadricVars - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t k = 0; k < free_count; ++k)
            total *= qn;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::fill(x.begin(), x.end(), 0);
            x[lead] = 1;
            std::uint64_t c = code;
            for (std::size_t k = lead + 1; k < kQuadricVars; ++k) {
                x[k] = static_cast<std::uint32_t>(c % qn);
                c /= qn;
            }
            if (detail::eval_fq(q, F, x) != 0)
                continue;
            for (std::size_t i = 0; i < kQuadricVars; ++i) {
                std::uint32_t g = 0;
                for (std::size_t j = 0; j < kQuadricVars; ++j)
                    g = F.add(g, F.mul(b(i, j), x[j]));
                if (g != 0)
                    return true;
            }
        }
    }
    return false;
}

/// The principal 4x4 minor of B (row and column i deleted) for the least i
/// where it is nonzero. Requires rank 4.
inline BigInt ruling_disc(const QuadricForm& q, std::size_t* which = nullptr)
{
    IntMatrix b = q.gram();
    if (rank(b) != 4)
        throw Error("ruling_disc: form does not have rank 4");
    for (std::size_t i = 0; i < kQuadricVars; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < kQuadricVars; ++k)
            if (k != i)
                idx.push_back(k);
        BigInt m = minor_det(b, idx, idx, BigInt(0), BigInt(1));
        if (m != 0) {
            if (which)
                *which = i;
            return m;
        }
    }
    throw Error("ruling_disc: no nonzero principal 4x4 minor");
}

} // namespace symmetroid

#endif // SYMMETROID_QUADFORM_HPP
