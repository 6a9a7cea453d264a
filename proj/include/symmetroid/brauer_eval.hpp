#ifndef SYMMETROID_BRAUER_EVAL_HPP
#define SYMMETROID_BRAUER_EVAL_HPP

#include "bigint.hpp"
#include "interval.hpp"
#include "localfields.hpp"
#include "matrix.hpp"
#include "pencil.hpp"
#include "quadform.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace symmetroid {

/// Which ruling of 2-planes a point of Y picks; rank-3 members have one.
enum class Ruling
{
    first,
    second,
    unique
};

inline std::string ruling_name(Ruling r)
{
    switch (r) {
    case Ruling::first:
        return "first";
    case Ruling::second:
        return "second";
    default:
        return "unique";
    }
}

/// A real root of det B on the line t = a + s b, isolated in `s`.
struct RealRootLocation
{
    std::vector<BigInt> a, b;
    UPoly restricted;  // det B(a + s b), squarefree part
    RatInterval s;
};

/// A point of H(Q_p) known modulo p^N.
struct PadicApproximation
{
    std::vector<BigInt> t;        // integral representative, some coordinate a unit
    unsigned precision = 0;       // N
    unsigned hensel_loss = 0;     // k: the true point agrees with t modulo p^(N - k)
    std::size_t dropped = 0;      // coordinate left out of the base block
    int minor_valuation = 0;      // valuation of the certifying 4x4 principal minor
};

/// A point of Y over a place v: a singular member t* of the pencil plus a ruling.
struct LocalYPoint
{
    Place place = Place::infinity();
    std::vector<BigRat> t;  // exact parameter; for real roots the midpoint of the interval
    bool exact = true;
    std::optional<RealRootLocation> real_root;
    std::optional<PadicApproximation> padic;
    Ruling ruling = Ruling::unique;
    int rank = 0;
    std::optional<std::array<int, 2>> signature;  // (n+, n-) of the nondegenerate part, real place only
    std::optional<SquareClass> base_disc;         // rank 4 only
    std::vector<BigRat> base_diagonal;            // nondegenerate part, exact and p-adic points
};

namespace detail {

inline std::vector<BigInt> integral_parameter(const std::vector<BigRat>& t)
{
    if (t.size() != 5)
        throw Error("parameter must have five coordinates");
    bool zero = std::all_of(t.begin(), t.end(), [](const BigRat& x) { return x == 0; });
    if (zero)
        throw Error("zero parameter");
    return primitive_integer_vector(t);
}

/// The member at a rational parameter, rescaled to a primitive integral one.
/// Rescaling changes the base discriminant by a fourth power only.
inline QuadricForm member_at(const Pencil& p, const std::vector<BigRat>& t)
{
    return p.member(integral_parameter(t));
}

inline BigRat det_at(const Pencil& p, const std::vector<BigRat>& t)
{
    return determinant(p.gram_at(t), BigRat(0), BigRat(1));
}

inline std::vector<BigRat> to_rat_vector(const std::vector<BigInt>& v)
{
    return std::vector<BigRat>(v.begin(), v.end());
}

inline std::vector<LocalYPoint> rulings_of(LocalYPoint base, bool two)
{
    std::vector<LocalYPoint> out;
    if (!two) {
        base.ruling = Ruling::unique;
        out.push_back(base);
        return out;
    }
    base.ruling = Ruling::first;
    out.push_back(base);
    base.ruling = Ruling::second;
    out.push_back(base);
    return out;
}

} // namespace detail

/// Points of Y over a rational point t* of H at the place v.
///
/// Rank 3 gives the single ramification point; rank 4 gives two points when
/// the base quadric surface has square discriminant at v, and none otherwise.
inline std::vector<LocalYPoint> lift_to_y(const Pencil& p, const std::vector<BigRat>& t, const Place& v)
{
    if (detail::det_at(p, t) != 0)
        throw Error("lift_to_y: parameter is not on the discriminant hypersurface");
    QuadricForm q = detail::member_at(p, t);
    FieldSpec field = v.is_infinite() ? FieldSpec::reals() : FieldSpec::padic(v.p());
    auto c = classify(q, field);
    if (c.rank <= 2)
        throw Error("lift_to_y: member of rank " + std::to_string(c.rank) + "; the pencil is not regular");
    LocalYPoint y;
    y.place = v;
    y.t = t;
    y.rank = c.rank;
    y.base_diagonal = detail::nonzero_part(c.diagonalization->diagonal);
    if (v.is_infinite())
        y.signature = std::array<int, 2>{(*c.signature)[0], (*c.signature)[1]};
    if (c.rank == 3)
        return detail::rulings_of(y, false);
    y.base_disc = c.base_discriminant;
    if (!y.base_disc->is_square())
        return {};
    return detail::rulings_of(y, true);
}

/// Validates an approximate p-adic point of H and lifts it to Y.
///
/// The parameter t is known mod p^N. With k the least valuation of a partial
/// derivative of det B at t and N > 2k, Hensel's lemma along that coordinate
/// gives a true zero t~ = t mod p^(N-k). A principal 4x4 minor of valuation m
/// certifies rank 4 at t~ once N > 2m + e (e = 1 for odd p, 3 for p = 2). The
/// base form is the restriction to the other four coordinates; its leading
/// minors D_1..D_4 must satisfy N - k >= v(D_i) + e so that each square class
/// is pinned. Otherwise the precision is reported as insufficient.
inline std::vector<LocalYPoint> lift_to_y(const Pencil& pen, const std::vector<BigInt>& t_approx, const Place& v,
                                          unsigned precision)
{
    if (v.is_infinite())
        throw Error("lift_to_y: approximate points are p-adic only");
    if (t_approx.size() != 5)
        throw Error("lift_to_y: parameter must have five coordinates");
    const BigInt p = v.p_big();
    const int e = v.p() == 2 ? 3 : 1;
    BigInt mod = ipow(p, precision);
    std::vector<BigInt> t(5);
    bool unit = false;
    for (std::size_t i = 0; i < 5; ++i) {
        t[i] = t_approx[i] % mod;
        if (t[i] < 0)
            t[i] += mod;
        unit = unit || t[i] % p != 0;
    }
    if (!unit)
        throw Error("lift_to_y: no coordinate of the parameter is a p-adic unit");
    std::vector<BigRat> tr = detail::to_rat_vector(t);
    BigRat d = detail::det_at(pen, tr);
    if (d != 0 && valuation(d, p) < static_cast<int>(precision))
        throw Error("lift_to_y: det B(t) is not 0 modulo p^N");
    // Hensel loss from the gradient of det.
    int k = -1;
    for (std::size_t i = 0; i < 5; ++i) {
        QPoly di = to_rational(pen.discriminant().derivative(i));
        BigRat g = di.evaluate(tr);
        if (g != 0) {
            int vi = valuation(g, p);
            if (k < 0 || vi < k)
                k = vi;
        }
    }
    if (k < 0 || static_cast<int>(precision) <= 2 * k)
        throw Error("lift_to_y: precision insufficient for Hensel lifting (N must exceed twice the gradient valuation)");
    int n_eff = static_cast<int>(precision) - k;
    RatMatrix b = pen.gram_at(tr);
    // Certifying minor: least valuation among principal 4x4 minors.
    std::size_t drop = 5;
    int m = 0;
    for (std::size_t j = 0; j < 5; ++j) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < 5; ++c)
            if (c != j)
                idx.push_back(c);
        BigRat mj = minor_det(b, idx, idx, BigRat(0), BigRat(1));
        if (mj == 0)
            continue;
        int vj = valuation(mj, p);
        if (drop == 5 || vj < m) {
            drop = j;
            m = vj;
        }
    }
    if (drop == 5 || static_cast<int>(precision) <= 2 * m + e || n_eff < m + e)
        throw Error("lift_to_y: precision insufficient to certify rank 4 and the discriminant class");
    std::vector<std::size_t> s;
    for (std::size_t c = 0; c < 5; ++c)
        if (c != drop)
            s.push_back(c);
    // Order the base coordinates so that all leading minors are nonzero and
    // of least maximal valuation.
    std::vector<BigRat> best_diag;
    int best_max = -1;
    std::sort(s.begin(), s.end());
    do {
        std::vector<BigRat> lead;
        bool ok = true;
        int mx = 0;
        for (std::size_t r = 1; r <= 4 && ok; ++r) {
            std::vector<std::size_t> idx(s.begin(), s.begin() + static_cast<long>(r));
            BigRat dr = minor_det(b, idx, idx, BigRat(0), BigRat(1));
            ok = dr != 0;
            if (ok) {
                mx = std::max(mx, valuation(dr, p));
                lead.push_back(dr);
            }
        }
        if (ok && (best_max < 0 || mx < best_max)) {
            best_max = mx;
            best_diag.clear();
            BigRat prev = 1;
            for (const auto& dr : lead) {
                best_diag.push_back(dr / prev);
                prev = dr;
            }
        }
    } while (std::next_permutation(s.begin(), s.end()));
    if (best_max < 0 || n_eff < best_max + e)
        throw Error("lift_to_y: precision insufficient to pin the base form's square classes");
    LocalYPoint y;
    y.place = v;
    y.t = tr;
    y.exact = false;
    y.rank = 4;
    y.base_diagonal = best_diag;
    BigRat disc = 1;
    for (const auto& x : best_diag)
        disc *= x;
    y.base_disc = square_class(disc, v);
    PadicApproximation a;
    a.t = t;
    a.precision = precision;
    a.hensel_loss = static_cast<unsigned>(k);
    a.dropped = drop;
    a.minor_valuation = m;
    y.padic = a;
    if (!y.base_disc->is_square())
        return {};
    return detail::rulings_of(y, true);
}

/// Outcome of evaluating alpha at a local point, with the independent checks.
struct InvariantEvaluation
{
    LocalInvariant invariant;                    // authoritative: smooth-point criterion
    std::optional<LocalInvariant> conic;         // Hilbert symbol of the conic <M1, M2/M1, M3/M2>
    std::optional<LocalInvariant> formal_symbol; // the printed pair (M2/M1^2, M3/(M2 M1)) taken literally
    std::vector<std::string> notes;
};

namespace detail {

/// Signs of the leading minors M_1..M_4 on a certified real root, or exact values.
struct MinorData
{
    std::array<BigRat, 4> value;   // exact (rational points)
    std::array<int, 4> sign{};     // real roots: certified signs, 0 when unknown
    bool exact = true;
};

inline std::optional<LocalInvariant> conic_invariant(const std::array<BigRat, 4>& m, const Place& v)
{
    if (m[0] == 0 || m[1] == 0 || m[2] == 0)
        return std::nullopt;
    BigRat d1 = m[0], d2 = m[1] / m[0], d3 = m[2] / m[1];
    return quaternion_invariant(BigRat(-d1 * d3), BigRat(-d2 * d3), v);
}

inline std::optional<LocalInvariant> formal_invariant(const std::array<BigRat, 4>& m, const Place& v)
{
    if (m[0] == 0 || m[1] == 0 || m[2] == 0)
        return std::nullopt;
    return quaternion_invariant(BigRat(m[1] / (m[0] * m[0])), BigRat(m[2] / (m[1] * m[0])), v);
}

/// Real place from signs alone: (a, b)_R = -1 iff a < 0 and b < 0.
inline std::optional<LocalInvariant> sign_invariant(int sa, int sb)
{
    if (sa == 0 || sb == 0)
        return std::nullopt;
    return LocalInvariant{sa < 0 && sb < 0};
}

} // namespace detail

/// Invariant of alpha at y with the conic and literal-symbol cross-checks.
///
/// The value is 1/2 exactly when Q_{t*} has no smooth point over the local
/// field. The conic path applies when the member's nondegenerate part is the
/// leading block (M_1..M_rank nonzero); it is skipped otherwise. A mismatch
/// of the conic path is recorded in the notes (and is a test failure); the
/// literal symbol is recorded for the sign-convention question only.
inline InvariantEvaluation evaluate_invariant_detailed(const Pencil& pen, const LocalYPoint& y)
{
    InvariantEvaluation out;
    bool smooth = false;
    if (y.real_root) {
        if (!y.signature)
            throw Error("evaluate_invariant: real point without a certified signature");
        smooth = (*y.signature)[0] > 0 && (*y.signature)[1] > 0;
    } else if (y.padic) {
        smooth = is_isotropic_diagonal(y.base_diagonal, y.place);
    } else {
        QuadricForm q = detail::member_at(pen, y.t);
        FieldSpec field = y.place.is_infinite() ? FieldSpec::reals() : FieldSpec::padic(y.place.p());
        smooth = has_smooth_point(q, field);
    }
    out.invariant = LocalInvariant{!smooth};

    if (y.padic) {
        out.notes.push_back("conic cross-check skipped: approximate p-adic point");
        return out;
    }
    // Leading minors at t*.
    std::array<ZPoly, 4> minors;
    for (std::size_t k = 0; k < 4; ++k)
        minors[k] = leading_minor(pen.universal_gram(), k + 1);
    bool nondeg_leading = false;
    if (y.real_root) {
        const auto& rr = *y.real_root;
        std::array<int, 4> sg{};
        for (std::size_t k = 0; k < 4; ++k)
            sg[k] = restrict_to_line(minors[k], rr.a, rr.b)(rr.s).certain_sign();
        nondeg_leading = sg[0] != 0 && sg[1] != 0 && sg[2] != 0 && (y.rank == 3 || sg[3] != 0);
        if (nondeg_leading) {
            // d1 = M1, d2 = M2/M1, d3 = M3/M2 by sign.
            int d1 = sg[0], d2 = sg[1] * sg[0], d3 = sg[2] * sg[1];
            out.conic = detail::sign_invariant(-d1 * d3, -d2 * d3);
            out.formal_symbol = detail::sign_invariant(sg[1], sg[2] * sg[1] * sg[0]);
        }
    } else {
        std::array<BigRat, 4> mv;
        for (std::size_t k = 0; k < 4; ++k)
            mv[k] = to_rational(minors[k]).evaluate(y.t);
        nondeg_leading = mv[0] != 0 && mv[1] != 0 && mv[2] != 0 && (y.rank == 3 || mv[3] != 0);
        if (nondeg_leading) {
            out.conic = detail::conic_invariant(mv, y.place);
            out.formal_symbol = detail::formal_invariant(mv, y.place);
        }
    }
    if (!nondeg_leading) {
        out.notes.push_back("conic cross-check skipped: a leading minor vanishes at t*");
        return out;
    }
    if (out.conic && *out.conic != out.invariant)
        out.notes.push_back("conic cross-check DISAGREES with the smooth-point criterion");
    if (out.formal_symbol && *out.formal_symbol != out.invariant)
        out.notes.push_back("literal symbol (M2/M1^2, M3/(M2 M1)) gives " + out.formal_symbol->str() +
                            "; the sign-corrected conic symbol agrees with the smooth-point criterion");
    return out;
}

inline LocalInvariant evaluate_invariant(const Pencil& pen, const LocalYPoint& y)
{
    return evaluate_invariant_detailed(pen, y).invariant;
}

/// Symmetric functions e_1..e_4 of B(t) (sums of principal minors), so that
/// det(l I - B) = l^5 - e_1 l^4 + e_2 l^3 - e_3 l^2 + e_4 l - det.
inline std::array<ZPoly, 4> principal_minor_sums(const Pencil& pen)
{
    std::array<ZPoly, 4> e;
    ZPoly zero(IntegerRing{}, 5);
    for (std::size_t k = 1; k <= 4; ++k) {
        e[k - 1] = zero;
        for (unsigned mask = 0; mask < 32; ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != k)
                continue;
            std::vector<std::size_t> idx;
            for (std::size_t c = 0; c < 5; ++c)
                if (mask >> c & 1)
                    idx.push_back(c);
            e[k - 1] += minor_det(pen.universal_gram(), idx, idx, zero, zpoly_constant(5, 1));
        }
    }
    return e;
}

namespace detail {

/// Certified data of a real root: rank 4 and the signature of the nonzero
/// eigenvalues. Eigenvalues are real, so Descartes' rule on
/// l^4 - e_1 l^3 + e_2 l^2 - e_3 l + e_4 counts the positive ones exactly.
struct RealCertification
{
    RatInterval s;
    int pos = 0, neg = 0;
};

/// Counts on one interval, or nullopt when some sign is not yet certain.
inline std::optional<RealCertification> real_counts(const std::array<UPoly, 4>& e_line,
                                                    const std::array<UPoly, 5>& minors4_line, const RatInterval& iv)
{
    bool rank4 = false;
    for (const auto& mn : minors4_line)
        rank4 = rank4 || mn(iv).certain_sign() != 0;
    if (!rank4)
        return std::nullopt;
    std::array<int, 4> sg{};
    for (std::size_t k = 0; k < 4; ++k) {
        if (e_line[k].is_zero())
            continue;
        sg[k] = e_line[k](iv).certain_sign();
        if (sg[k] == 0)
            return std::nullopt;
    }
    if (sg[3] == 0)
        return std::nullopt;
    // Coefficients of g(l) from l^4 down: 1, -e1, e2, -e3, e4.
    std::array<int, 5> c{1, -sg[0], sg[1], -sg[2], sg[3]};
    int var = 0, last = 1;
    for (std::size_t i = 1; i < 5; ++i) {
        if (c[i] == 0)
            continue;
        if (c[i] != last)
            ++var;
        last = c[i];
    }
    return RealCertification{iv, var, 4 - var};
}

/// Refines until the counts are certain, then once more to confirm they are
/// stable under refinement.
inline std::optional<RealCertification> certify_real_root(const std::array<UPoly, 4>& e_line,
                                                          const std::array<UPoly, 5>& minors4_line, const UPoly& f,
                                                          RatInterval iv)
{
    for (int round = 0; round < 40; ++round) {
        if (auto rc = real_counts(e_line, minors4_line, iv)) {
            RatInterval finer = iv.is_point() ? iv : refine_root(f, iv, iv.width() / 1024);
            auto again = real_counts(e_line, minors4_line, finer);
            if (!again || again->pos != rc->pos)
                return std::nullopt;
            return rc;
        }
        if (iv.is_point())
            return std::nullopt;
        iv = refine_root(f, iv, iv.width() / 1024);
    }
    return std::nullopt;
}

} // namespace detail

/// Rational points e_0..e_4 and the parameters with entries in {-1, 0, 1}
/// (one per sign class) lying on H, in a fixed order.
inline std::vector<std::vector<BigRat>> distinguished_h_points(const Pencil& pen)
{
    std::vector<std::vector<BigRat>> out;
    auto push_if = [&](const std::vector<BigRat>& t) {
        if (detail::det_at(pen, t) == 0)
            out.push_back(t);
    };
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<BigRat> t(5, BigRat(0));
        t[i] = 1;
        push_if(t);
    }
    for (int code = 0; code < 243; ++code) {
        std::vector<BigRat> t(5);
        int c = code, nz = 0, first = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            t[i] = (c % 3) - 1;
            c /= 3;
            if (t[i] != 0) {
                if (nz == 0)
                    first = t[i] > 0 ? 1 : -1;
                ++nz;
            }
        }
        if (nz >= 2 && first == 1)
            push_if(t);
    }
    return out;
}

/// Searches Y(R) for a point whose invariant is `target`.
///
/// The rational members e_i come first; then seeded integral lines t = a + s b
/// in P: det B restricted to the line is a quintic in s whose real roots are
/// isolated and certified (rank 4 by a 4x4 principal minor of constant sign,
/// signature by interval Descartes on the characteristic polynomial). Members
/// of signature (4,0) or (0,4) give 1/2, (2,2) gives 0; (3,1) and (1,3) have
/// negative base discriminant and do not lift. Returns nullopt when the budget
/// runs out, which says nothing about existence.
inline std::optional<LocalYPoint> find_real_point_with_invariant(const Pencil& pen, LocalInvariant target,
                                                                 std::uint64_t seed = 1, int line_budget = 200)
{
    const Place inf = Place::infinity();
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<BigRat> t(5, BigRat(0));
        t[i] = 1;
        if (detail::det_at(pen, t) != 0)
            continue;
        std::vector<LocalYPoint> ys;
        try {
            ys = lift_to_y(pen, t, inf);
        } catch (const Error&) {
            continue;  // rank below 3: not a point this search can use
        }
        for (const auto& y : ys)
            if (evaluate_invariant(pen, y) == target)
                return y;
    }
    auto e = principal_minor_sums(pen);
    std::array<ZPoly, 5> m4;
    for (std::size_t j = 0; j < 5; ++j) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < 5; ++c)
            if (c != j)
                idx.push_back(c);
        m4[j] = minor_det(pen.universal_gram(), idx, idx, ZPoly(IntegerRing{}, 5), zpoly_constant(5, 1));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (int line = 0; line < line_budget; ++line) {
        std::vector<BigInt> a(5), b(5);
        for (std::size_t i = 0; i < 5; ++i) {
            a[i] = dist(rng);
            b[i] = dist(rng);
        }
        UPoly f = restrict_to_line(pen.discriminant(), a, b);
        if (f.is_zero() || f.degree() < 1)
            continue;
        UPoly g = f.squarefree_part();
        std::array<UPoly, 4> el;
        for (std::size_t k = 0; k < 4; ++k)
            el[k] = restrict_to_line(e[k], a, b);
        std::array<UPoly, 5> ml;
        for (std::size_t j = 0; j < 5; ++j)
            ml[j] = restrict_to_line(m4[j], a, b);
        for (const auto& iv : isolate_real_roots(g)) {
            if (iv.is_point()) {
                std::vector<BigRat> t(5);
                for (std::size_t i = 0; i < 5; ++i)
                    t[i] = BigRat(a[i]) + iv.lo() * BigRat(b[i]);
                bool zero = std::all_of(t.begin(), t.end(), [](const BigRat& x) { return x == 0; });
                if (zero)
                    continue;
                std::vector<LocalYPoint> ys;
                try {
                    ys = lift_to_y(pen, t, inf);
                } catch (const Error&) {
                    continue;
                }
                for (const auto& y : ys)
                    if (evaluate_invariant(pen, y) == target)
                        return y;
                continue;
            }
            auto rc = detail::certify_real_root(el, ml, g, iv);
            if (!rc)
                continue;
            if (rc->neg % 2 == 1)
                continue;  // base discriminant negative: no real point of Y
            LocalInvariant inv{rc->pos == 0 || rc->neg == 0};
            if (inv != target)
                continue;
            LocalYPoint y;
            y.place = inf;
            y.exact = false;
            y.rank = 4;
            y.signature = std::array<int, 2>{rc->pos, rc->neg};
            y.base_disc = SquareClass{inf, 0, 1};
            y.real_root = RealRootLocation{a, b, g, rc->s};
            BigRat mid = rc->s.midpoint();
            y.t.resize(5);
            for (std::size_t i = 0; i < 5; ++i)
                y.t[i] = BigRat(a[i]) + mid * BigRat(b[i]);
            y.ruling = Ruling::first;
            return y;
        }
    }
    return std::nullopt;
}

/// Re-checks a local point against the pencil: rational points are re-lifted,
/// real roots re-certified on their stored interval, p-adic approximations
/// re-validated at their stored precision.
inline bool validate_y_point(const Pencil& pen, const LocalYPoint& y)
{
    try {
        if (y.real_root) {
            const auto& rr = *y.real_root;
            UPoly f = restrict_to_line(pen.discriminant(), rr.a, rr.b).squarefree_part();
            if (f != rr.restricted)
                return false;
            if (!rr.s.is_point()) {
                if (f.sign_at(rr.s.lo()) == 0 || f.sign_at(rr.s.lo()) == f.sign_at(rr.s.hi()))
                    return false;
            }
            auto e = principal_minor_sums(pen);
            std::array<UPoly, 4> el;
            for (std::size_t k = 0; k < 4; ++k)
                el[k] = restrict_to_line(e[k], rr.a, rr.b);
            std::array<UPoly, 5> ml;
            for (std::size_t j = 0; j < 5; ++j) {
                std::vector<std::size_t> idx;
                for (std::size_t c = 0; c < 5; ++c)
                    if (c != j)
                        idx.push_back(c);
                ml[j] = restrict_to_line(
                    minor_det(pen.universal_gram(), idx, idx, ZPoly(IntegerRing{}, 5), zpoly_constant(5, 1)), rr.a,
                    rr.b);
            }
            auto rc = detail::certify_real_root(el, ml, f, rr.s);
            return rc && y.signature && rc->pos == (*y.signature)[0] && rc->neg == (*y.signature)[1] &&
                   rc->neg % 2 == 0;
        }
        std::vector<LocalYPoint> ys = y.padic ? lift_to_y(pen, y.padic->t, y.place, y.padic->precision)
                                              : lift_to_y(pen, y.t, y.place);
        for (const auto& z : ys)
            if (z.ruling == y.ruling && z.rank == y.rank)
                return true;
        return false;
    } catch (const Error&) {
        return false;
    }
}

/// How the two differing invariants are sought.
struct Strategy
{
    enum class Kind
    {
        real,
        finite
    };
    Kind kind = Kind::real;
    std::uint64_t p = 0;

    static Strategy real() { return {Kind::real, 0}; }
    static Strategy finite(std::uint64_t p)
    {
        if (!is_prime(p))
            throw Error("Strategy: " + std::to_string(p) + " is not prime");
        return {Kind::finite, p};
    }
    Place place() const { return kind == Kind::real ? Place::infinity() : Place::prime(p); }
    std::string str() const { return kind == Kind::real ? "real" : "finite(" + std::to_string(p) + ")"; }

    /// "real", "finite(3)", "finite:3" or a bare prime.
    static Strategy parse(const std::string& s)
    {
        if (s == "real" || s == "inf")
            return real();
        std::string digits = s;
        if (s.rfind("finite(", 0) == 0 && s.back() == ')')
            digits = s.substr(7, s.size() - 8);
        else if (s.rfind("finite:", 0) == 0)
            digits = s.substr(7);
        try {
            std::size_t used = 0;
            auto v = std::stoull(digits, &used);
            if (used == digits.size())
                return finite(v);
        } catch (const std::exception&) {
        }
        throw Error("Strategy: cannot parse '" + s + "'");
    }
};

/// Local solubility evidence at one place.
struct SolubilityWitness
{
    Place place = Place::infinity();
    std::optional<LocalYPoint> point;
    std::string reasoning;
};

/// Two points of Y over one place with different invariants, plus evidence
/// that Y has points everywhere locally. Changing the local component of an
/// adelic point from one to the other shifts the sum of invariants by 1/2, so
/// one of the two adelic points is not orthogonal to alpha.
struct WACertificate
{
    std::string pencil;
    RegularityCertificate regularity;
    Strategy strategy;
    Place place = Place::infinity();
    LocalYPoint trivial_point;
    LocalYPoint nontrivial_point;
    std::optional<std::vector<BigRat>> global_point;  // rational parameter of a Y(Q) point
    bool locally_soluble_everywhere = false;          // true when a Y(Q) point is known
    std::vector<SolubilityWitness> witnesses;
    std::vector<std::string> reasoning;
};

namespace detail {

/// A rational Y-point over t: rank 3, or rank 4 with base discriminant a
/// rational square.
inline bool is_global_y_point(const Pencil& pen, const std::vector<BigRat>& t)
{
    QuadricForm q = member_at(pen, t);
    int r = static_cast<int>(rank(q.gram()));
    if (r == 3)
        return true;
    if (r != 4)
        return false;
    BigInt d = ruling_disc(q);
    return d > 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

inline std::vector<BigInt> prime_factors(BigInt n)
{
    std::vector<BigInt> out;
    if (n < 0)
        n = -n;
    for (BigInt d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
        if (d > 100000)
            throw Error("prime_factors: cofactor too large for trial division");
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

} // namespace detail

/// Assembles a weak-approximation failure certificate.
///
/// Regularity is certified at the first good prime among `primes`. For the
/// real strategy both invariants come from find_real_point_with_invariant;
/// for finite(p) they come from the distinguished rational H-points. Local
/// solubility is witnessed by a rational Y-point when one exists among the
/// distinguished members; otherwise by local points at the critical places
/// (infinity, 2, the chosen place and primes dividing ruling discriminants of
/// the distinguished members), with the remaining places recorded as a
/// good-reduction argument rather than verified.
inline WACertificate certify_wa_failure(const Pencil& pen, const Strategy& strategy, std::uint64_t seed = 1,
                                        const std::vector<std::uint64_t>& primes = {3, 5, 7, 11},
                                        int line_budget = 200)
{
    WACertificate cert;
    cert.pencil = serialize_pencil(pen);
    cert.strategy = strategy;
    cert.place = strategy.place();
    cert.regularity = find_regularity_certificate(pen, primes);
    if (cert.regularity.verdict != RegularityCertificate::Verdict::certified)
        throw Error("certify_wa_failure: no regularity certificate at the given primes");
    cert.reasoning.push_back("regular: " + cert.regularity.reasoning);

    auto h_points = distinguished_h_points(pen);
    std::optional<LocalYPoint> zero_pt, half_pt;
    if (strategy.kind == Strategy::Kind::real) {
        zero_pt = find_real_point_with_invariant(pen, LocalInvariant::zero(), seed, line_budget);
        half_pt = find_real_point_with_invariant(pen, LocalInvariant::one_half(), seed, line_budget);
    } else {
        for (const auto& t : h_points) {
            std::vector<LocalYPoint> ys;
            try {
                ys = lift_to_y(pen, t, cert.place);
            } catch (const Error&) {
                continue;
            }
            for (const auto& y : ys) {
                auto inv = evaluate_invariant(pen, y);
                if (!inv.half && !zero_pt)
                    zero_pt = y;
                if (inv.half && !half_pt)
                    half_pt = y;
            }
        }
    }
    if (!zero_pt || !half_pt)
        throw Error("certify_wa_failure: could not realize both invariants at " + cert.place.str());
    cert.trivial_point = *zero_pt;
    cert.nontrivial_point = *half_pt;
    cert.reasoning.push_back("invariants 0 and 1/2 both occur at " + cert.place.str());

    for (const auto& t : h_points)
        if (detail::is_global_y_point(pen, t)) {
            cert.global_point = t;
            break;
        }
    if (cert.global_point) {
        cert.locally_soluble_everywhere = true;
        SolubilityWitness w;
        w.place = Place::infinity();
        w.reasoning = "Y has a rational point over the member at the stored parameter, hence points at every place";
        cert.witnesses.push_back(w);
        cert.reasoning.push_back("Y(Q) is nonempty, so Y is everywhere locally soluble and its adelic points "
                                 "are not all orthogonal to alpha: weak approximation fails");
        return cert;
    }
    // Critical places.
    std::vector<Place> critical{Place::infinity(), Place::prime(2)};
    if (!cert.place.is_infinite() && cert.place.p() != 2)
        critical.push_back(cert.place);
    for (const auto& t : h_points) {
        QuadricForm q = detail::member_at(pen, t);
        if (rank(q.gram()) != 4)
            continue;
        for (const auto& f : detail::prime_factors(ruling_disc(q))) {
            Place v = Place::prime(f.get_ui());
            if (std::find(critical.begin(), critical.end(), v) == critical.end())
                critical.push_back(v);
        }
    }
    for (const auto& v : critical) {
        SolubilityWitness w;
        w.place = v;
        for (const auto& t : h_points) {
            std::vector<LocalYPoint> ys;
            try {
                ys = lift_to_y(pen, t, v);
            } catch (const Error&) {
                continue;
            }
            if (!ys.empty()) {
                w.point = ys.front();
                break;
            }
        }
        if (!w.point)
            throw Error("certify_wa_failure: no local point of Y found at critical place " + v.str());
        w.reasoning = "local point over a distinguished rational member";
        cert.witnesses.push_back(w);
    }
    SolubilityWitness rest;
    rest.reasoning = "remaining primes: good reduction of the distinguished members (recorded, not verified)";
    cert.witnesses.push_back(rest);
    cert.reasoning.push_back("local solubility away from the critical set rests on good reduction");
    return cert;
}

/// Re-runs every check recorded in a certificate. On failure `why` says which.
inline bool validate_certificate(const Pencil& pen, const WACertificate& cert, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (cert.regularity.verdict != RegularityCertificate::Verdict::certified)
        return fail("regularity not certified");
    if (cert.pencil != serialize_pencil(pen))
        return fail("certificate belongs to a different pencil");
    if (cert.trivial_point.place != cert.place || cert.nontrivial_point.place != cert.place)
        return fail("points are not at the certificate's place");
    if (!validate_y_point(pen, cert.trivial_point) || !validate_y_point(pen, cert.nontrivial_point))
        return fail("a stored local point does not validate");
    if (evaluate_invariant(pen, cert.trivial_point) != LocalInvariant::zero())
        return fail("trivial point does not evaluate to 0");
    if (evaluate_invariant(pen, cert.nontrivial_point) != LocalInvariant::one_half())
        return fail("nontrivial point does not evaluate to 1/2");
    if (cert.global_point) {
        if (detail::det_at(pen, *cert.global_point) != 0 || !detail::is_global_y_point(pen, *cert.global_point))
            return fail("stored rational Y-point does not validate");
    } else {
        for (const auto& w : cert.witnesses)
            if (w.point && !validate_y_point(pen, *w.point))
                return fail("local solubility witness at " + w.place.str() + " does not validate");
    }
    return true;
}

} // namespace symmetroid

#endif // SYMMETROID_BRAUER_EVAL_HPP
