#ifndef SYMMETROID_MULTIPOLY_HPP
#define SYMMETROID_MULTIPOLY_HPP

#include "bigint.hpp"
#include "finite_field.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

namespace symmetroid {

constexpr std::size_t kMaxVars = 16;

/// Exponent vector of a monomial in at most kMaxVars variables.
struct Monomial
{
    std::array<std::uint8_t, kMaxVars> e{};

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto x : e)
            d += x;
        return d;
    }

    unsigned operator[](std::size_t i) const { return e[i]; }

    static Monomial var(std::size_t i, unsigned power = 1)
    {
        Monomial m;
        m.e[i] = static_cast<std::uint8_t>(power);
        return m;
    }

    Monomial operator*(const Monomial& o) const
    {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 255)
                throw Error("Monomial: exponent overflow");
            m.e[i] = static_cast<std::uint8_t>(s);
        }
        return m;
    }

    bool divides(const Monomial& o) const
    {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i])
                return false;
        return true;
    }

    Monomial operator/(const Monomial& o) const
    {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (o.e[i] > e[i])
                throw Error("Monomial: inexact division");
            m.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
        }
        return m;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

/// Graded reverse lexicographic order, x0 > x1 > ... ; "a before b" means a is larger.
struct GrevlexGreater
{
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        unsigned da = a.degree(), db = b.degree();
        if (da != db)
            return da > db;
        for (std::size_t i = kMaxVars; i-- > 0;)
            if (a.e[i] != b.e[i])
                return a.e[i] < b.e[i];
        return false;
    }
};

/// All monomials of total degree d in n variables, in descending grevlex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d)
{
    std::vector<Monomial> out;
    Monomial cur;
    // Recursive fill of the exponents of variables 0..n-1.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == n) {
            cur.e[i] = static_cast<std::uint8_t>(left);
            out.push_back(cur);
            cur.e[i] = 0;
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            cur.e[i] = static_cast<std::uint8_t>(k);
            self(self, i + 1, left - k);
        }
        cur.e[i] = 0;
    };
    if (n == 0) {
        if (d == 0)
            out.push_back(cur);
        return out;
    }
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

struct IntegerRing
{
    using value_type = BigInt;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type from_integer(const BigInt& n) const { return n; }
    bool operator==(const IntegerRing&) const { return true; }
};

struct RationalRing
{
    using value_type = BigRat;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const
    {
        if (a == 0)
            throw Error("RationalRing: inverse of zero");
        return 1 / a;
    }
    value_type from_integer(const BigInt& n) const { return BigRat(n); }
    bool operator==(const RationalRing&) const { return true; }
};

/// Sparse polynomial in n variables over a coefficient ring.
///
/// No zero coefficient is ever stored. Terms are kept in descending grevlex order.
template <typename Ring>
class MultiPoly
{
public:
    using ring_type = Ring;
    using coeff_type = typename Ring::value_type;
    using term_map = std::map<Monomial, coeff_type, GrevlexGreater>;

    MultiPoly() = default;
    MultiPoly(Ring ring, std::size_t nvars) : ring_(std::move(ring)), n_(nvars)
    {
        if (nvars > kMaxVars)
            throw Error("MultiPoly: too many variables");
    }

    static MultiPoly constant(Ring ring, std::size_t nvars, const coeff_type& c)
    {
        MultiPoly p(ring, nvars);
        p.add_term(Monomial{}, c);
        return p;
    }

    static MultiPoly variable(Ring ring, std::size_t nvars, std::size_t i)
    {
        if (i >= nvars)
            throw Error("MultiPoly: variable index out of range");
        MultiPoly p(ring, nvars);
        p.add_term(Monomial::var(i), p.ring_.one());
        return p;
    }

    const Ring& ring() const { return ring_; }
    std::size_t nvars() const { return n_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const coeff_type& c)
    {
        if (ring_.is_zero(c))
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = ring_.add(it->second, c);
        if (ring_.is_zero(it->second))
            terms_.erase(it);
    }

    coeff_type coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_.zero() : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        unsigned d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return false;
        return true;
    }

    /// Homogeneous with respect to the grading where variables in [0, split) have
    /// weight (1,0) and the rest (0,1); returns false when mixed.
    bool is_bihomogeneous(std::size_t split, unsigned& d1, unsigned& d2) const
    {
        bool first = true;
        for (const auto& [m, c] : terms_) {
            unsigned a = 0, b = 0;
            for (std::size_t i = 0; i < n_; ++i)
                (i < split ? a : b) += m.e[i];
            if (first) {
                d1 = a;
                d2 = b;
                first = false;
            } else if (a != d1 || b != d2)
                return false;
        }
        return true;
    }

    MultiPoly operator-() const
    {
        MultiPoly r(ring_, n_);
        for (const auto& [m, c] : terms_)
            r.terms_.emplace(m, ring_.neg(c));
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, ring_.neg(c));
        return *this;
    }

    MultiPoly operator+(const MultiPoly& o) const
    {
        MultiPoly r(*this);
        r += o;
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const
    {
        MultiPoly r(*this);
        r -= o;
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const
    {
        check_compatible(o);
        MultiPoly r(ring_, n_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_)
                r.add_term(m1 * m2, ring_.mul(c1, c2));
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const coeff_type& s) const
    {
        MultiPoly r(ring_, n_);
        if (ring_.is_zero(s))
            return r;
        for (const auto& [m, c] : terms_)
            r.add_term(m, ring_.mul(c, s));
        return r;
    }

    MultiPoly times_monomial(const Monomial& mono) const
    {
        MultiPoly r(ring_, n_);
        for (const auto& [m, c] : terms_)
            r.terms_.emplace(m * mono, c);
        return r;
    }

    MultiPoly pow(unsigned e) const
    {
        MultiPoly r = constant(ring_, n_, ring_.one());
        MultiPoly b(*this);
        while (e) {
            if (e & 1)
                r = r * b;
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Value at a point with coordinates in the coefficient ring.
    coeff_type evaluate(const std::vector<coeff_type>& pt) const
    {
        if (pt.size() != n_)
            throw Error("MultiPoly::evaluate: wrong number of coordinates");
        coeff_type acc = ring_.zero();
        for (const auto& [m, c] : terms_) {
            coeff_type t = c;
            for (std::size_t i = 0; i < n_; ++i)
                for (unsigned k = 0; k < m.e[i]; ++k)
                    t = ring_.mul(t, pt[i]);
            acc = ring_.add(acc, t);
        }
        return acc;
    }

    /// Substitute values of an arbitrary commutative type T for the variables.
    /// `lift` maps a coefficient into T.
    template <typename T, typename Lift>
    T substitute(const std::vector<T>& vals, const T& zero, Lift lift) const
    {
        if (vals.size() != n_)
            throw Error("MultiPoly::substitute: wrong number of values");
        // Cache powers, since monomials share them.
        std::vector<std::vector<T>> powers(n_);
        T acc = zero;
        for (const auto& [m, c] : terms_) {
            T t = lift(c);
            for (std::size_t i = 0; i < n_; ++i) {
                if (m.e[i] == 0)
                    continue;
                auto& pw = powers[i];
                if (pw.empty())
                    pw.push_back(vals[i]);
                while (pw.size() < m.e[i])
                    pw.push_back(pw.back() * vals[i]);
                t = t * pw[m.e[i] - 1];
            }
            acc = acc + t;
        }
        return acc;
    }

    /// Same polynomial with coefficients mapped into another ring.
    template <typename Ring2, typename F>
    MultiPoly<Ring2> map_coefficients(const Ring2& ring2, F f) const
    {
        MultiPoly<Ring2> r(ring2, n_);
        for (const auto& [m, c] : terms_)
            r.add_term(m, f(c));
        return r;
    }

    /// Partial derivative with respect to variable i.
    MultiPoly derivative(std::size_t i) const
    {
        MultiPoly r(ring_, n_);
        for (const auto& [m, c] : terms_) {
            if (m.e[i] == 0)
                continue;
            Monomial mm = m;
            mm.e[i] -= 1;
            coeff_type k = ring_.from_integer(BigInt(static_cast<unsigned long>(m.e[i])));
            r.add_term(mm, ring_.mul(c, k));
        }
        return r;
    }

private:
    void check_compatible(const MultiPoly& o) const
    {
        if (n_ != o.n_)
            throw Error("MultiPoly: variable count mismatch");
    }

    Ring ring_{};
    std::size_t n_ = 0;
    term_map terms_;
};

using ZPoly = MultiPoly<IntegerRing>;
using QPoly = MultiPoly<RationalRing>;
using FpPoly = MultiPoly<PrimeField>;

inline ZPoly zpoly_constant(std::size_t n, const BigInt& c) { return ZPoly::constant(IntegerRing{}, n, c); }
inline ZPoly zpoly_var(std::size_t n, std::size_t i) { return ZPoly::variable(IntegerRing{}, n, i); }

inline FpPoly reduce_mod(const ZPoly& f, const PrimeField& F)
{
    return f.map_coefficients(F, [&](const BigInt& c) { return F.from_integer(c); });
}

inline QPoly to_rational(const ZPoly& f)
{
    return f.map_coefficients(RationalRing{}, [](const BigInt& c) { return BigRat(c); });
}

namespace detail {

inline std::string coeff_string(const BigInt& c) { return c.get_str(); }
inline std::string coeff_string(const BigRat& c) { return c.get_str(); }
inline std::string coeff_string(std::uint64_t c) { return std::to_string(c); }
inline std::string coeff_string(std::uint32_t c) { return std::to_string(c); }

inline bool is_negative(const BigInt& c) { return c < 0; }
inline bool is_negative(const BigRat& c) { return c < 0; }
inline bool is_negative(std::uint64_t) { return false; }
inline bool is_negative(std::uint32_t) { return false; }

inline bool is_unit_one(const BigInt& c) { return c == 1; }
inline bool is_unit_one(const BigRat& c) { return c == 1; }
inline bool is_unit_one(std::uint64_t c) { return c == 1; }
inline bool is_unit_one(std::uint32_t c) { return c == 1; }

template <typename T>
T abs_coeff(const T& c)
{
    if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, BigRat>)
        return c < 0 ? T(-c) : c;
    else
        return c;
}

} // namespace detail

/// Canonical text form, e.g. "-t0^2 - 2*t0*t1 + 7*t1^2". Zero prints as "0".
template <typename Ring>
std::string to_string(const MultiPoly<Ring>& f, const std::string& var = "t")
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        bool neg = detail::is_negative(c);
        auto mag = detail::abs_coeff(c);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (m.e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += var + std::to_string(i);
            if (m.e[i] > 1)
                mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty())
            out += detail::coeff_string(mag);
        else if (detail::is_unit_one(mag))
            out += mono;
        else
            out += detail::coeff_string(mag) + "*" + mono;
    }
    return out;
}

/// Parse an integer polynomial written with variables var0..var{n-1}.
///
/// Accepts "2*x0*x1", "2x0x1", "x0^2", "-x3 + 7", spaces anywhere.
inline ZPoly parse_polynomial(const std::string& text, const std::string& var, std::size_t nvars)
{
    ZPoly result(IntegerRing{}, nvars);
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw Error("parse_polynomial: empty input");
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw Error("parse_polynomial: " + why + " at offset " + std::to_string(pos) + " in '" + text + "'");
    };
    auto read_int = [&]() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        return BigInt(s.substr(start, pos - start));
    };
    bool first = true;
    while (pos < s.size()) {
        int sgn = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sgn = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first)
            fail("expected '+' or '-'");
        first = false;
        BigInt c = 1;
        Monomial m;
        bool have_factor = false;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            if (have_factor && s[pos] == '*')
                ++pos;
            if (pos >= s.size())
                fail("dangling '*'");
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                c *= read_int();
            } else if (s.compare(pos, var.size(), var) == 0) {
                pos += var.size();
                if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                    fail("variable without index");
                BigInt idx = read_int();
                if (idx >= BigInt(static_cast<unsigned long>(nvars)))
                    fail("variable index out of range");
                unsigned e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                        fail("bad exponent");
                    e = static_cast<unsigned>(read_int().get_ui());
                }
                m = m * Monomial::var(idx.get_ui(), e);
            } else {
                fail(std::string("unexpected character '") + s[pos] + "'");
            }
            have_factor = true;
        }
        if (!have_factor)
            fail("empty term");
        result.add_term(m, sgn * c);
    }
    return result;
}

} // namespace symmetroid

#endif // SYMMETROID_MULTIPOLY_HPP
