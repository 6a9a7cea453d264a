#ifndef SYMMETROID_UPOLY_HPP
#define SYMMETROID_UPOLY_HPP

#include "bigint.hpp"
#include "interval.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace symmetroid {

/// Univariate polynomial over Q, coefficients stored from degree 0 upward.
class UPoly
{
public:
    UPoly() = default;
    UPoly(const BigRat& c)
    {
        if (c != 0)
            c_.push_back(c);
    }
    UPoly(long c) : UPoly(BigRat(c)) {}
    explicit UPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<BigRat>{0, 1}); }
    static UPoly monomial(const BigRat& c, unsigned k)
    {
        std::vector<BigRat> v(k + 1, BigRat(0));
        v[k] = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigRat>& coeffs() const { return c_; }
    BigRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigRat(0); }
    BigRat leading() const { return c_.empty() ? BigRat(0) : c_.back(); }

    BigRat operator()(const BigRat& x) const
    {
        BigRat acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    /// Horner evaluation on an interval (conservative enclosure).
    RatInterval operator()(const RatInterval& x) const
    {
        RatInterval acc(BigRat(0));
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + RatInterval(c_[i]);
        return acc;
    }

    int sign_at(const BigRat& x) const { return sgn((*this)(x)); }

    UPoly derivative() const
    {
        std::vector<BigRat> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * BigRat(static_cast<long>(i)));
        return UPoly(std::move(d));
    }

    UPoly operator-() const
    {
        UPoly r(*this);
        for (auto& a : r.c_)
            a = -a;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<BigRat> r(std::max(a.c_.size(), b.c_.size()), BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            r[i] += b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return UPoly();
        std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return c_ != o.c_; }

    /// Quotient and remainder over Q.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero())
            throw Error("UPoly: division by zero polynomial");
        std::vector<BigRat> rem(a.c_);
        int db = b.degree();
        if (a.degree() < db)
            return {UPoly(), a};
        std::vector<BigRat> q(a.c_.size() - b.c_.size() + 1, BigRat(0));
        BigRat lb = b.leading();
        for (int k = a.degree(); k >= db; --k) {
            BigRat f = rem[k] / lb;
            q[k - db] = f;
            if (f == 0)
                continue;
            for (int i = 0; i <= db; ++i)
                rem[k - db + i] -= f * b.c_[i];
        }
        rem.resize(db);
        return {UPoly(std::move(q)), UPoly(std::move(rem))};
    }

    /// Positive rational multiple with coprime integer coefficients.
    UPoly primitive() const
    {
        if (is_zero())
            return *this;
        BigInt den = 1, num = 0;
        for (const auto& a : c_)
            den = lcm(den, a.get_den());
        for (const auto& a : c_)
            num = gcd(num, BigInt(a.get_num() * (den / a.get_den())));
        BigRat scale = make_rat(den, num);
        UPoly r(*this);
        for (auto& a : r.c_)
            a *= scale;
        return r;
    }

    /// Monic-free gcd normalised by primitive().
    friend UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = r.primitive();
        }
        return a.primitive();
    }

    UPoly squarefree_part() const
    {
        if (degree() <= 0)
            return *this;
        UPoly g = gcd(*this, derivative());
        if (g.degree() == 0)
            return primitive();
        return divmod(*this, g).first.primitive();
    }

    std::string str(const std::string& var = "s") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0)
                continue;
            BigRat a = c_[i];
            if (out.empty())
                out += a < 0 ? "-" : "";
            else
                out += a < 0 ? " - " : " + ";
            if (a < 0)
                a = -a;
            if (i == 0)
                out += a.get_str();
            else {
                if (a != 1)
                    out += a.get_str() + "*";
                out += var;
                if (i > 1)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<BigRat> c_;
};

/// Sturm chain f, f', -rem(...), ... with positive content removal at each step.
inline std::vector<UPoly> sturm_sequence(const UPoly& f)
{
    std::vector<UPoly> seq;
    if (f.is_zero())
        return seq;
    seq.push_back(f.primitive());
    UPoly d = f.derivative();
    if (d.is_zero())
        return seq;
    seq.push_back(d.primitive());
    while (true) {
        UPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero())
            break;
        seq.push_back((-r).primitive());
    }
    return seq;
}

/// Sign variations of the chain at x (zeros skipped).
inline int sign_variations(const std::vector<UPoly>& seq, const BigRat& x)
{
    int prev = 0, v = 0;
    for (const auto& p : seq) {
        int s = p.sign_at(x);
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++v;
        prev = s;
    }
    return v;
}

/// Number of distinct real roots in (a, b].
inline int count_roots(const std::vector<UPoly>& seq, const BigRat& a, const BigRat& b)
{
    return sign_variations(seq, a) - sign_variations(seq, b);
}

/// Sign changes in the coefficient sequence (Descartes' rule).
inline int descartes_variations(const UPoly& f)
{
    int prev = 0, v = 0;
    for (const auto& a : f.coeffs()) {
        int s = sgn(a);
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++v;
        prev = s;
    }
    return v;
}

/// Strict bound: every real root x has |x| < cauchy_bound(f).
inline BigRat cauchy_bound(const UPoly& f)
{
    BigRat m = 0;
    BigRat lead = f.leading();
    for (int i = 0; i < f.degree(); ++i) {
        BigRat r = f.coeff(i) / lead;
        if (r < 0)
            r = -r;
        if (r > m)
            m = r;
    }
    return m + 1;
}

/// Isolating intervals of the distinct real roots of f, in increasing order.
///
/// Each returned interval is either a point [r, r] with f(r) = 0, or has
/// endpoints that are not roots and contains exactly one root in its interior.
inline std::vector<RatInterval> isolate_real_roots(const UPoly& f)
{
    if (f.is_zero())
        throw Error("isolate_real_roots: zero polynomial");
    std::vector<RatInterval> out;
    if (f.degree() == 0)
        return out;
    UPoly g = f.squarefree_part();
    auto seq = sturm_sequence(g);
    BigRat b = cauchy_bound(g);

    struct Job
    {
        BigRat lo, hi;
        int count;  // roots in the open interval (lo, hi)
    };
    // Sturm counts roots in (lo, hi]; drop hi when it is itself a root.
    auto count_open = [&](const BigRat& lo, const BigRat& hi) {
        return count_roots(seq, lo, hi) - (g.sign_at(hi) == 0 ? 1 : 0);
    };
    std::vector<Job> stack{{-b, b, count_open(-b, b)}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        if (j.count == 0)
            continue;
        if (j.count == 1 && g.sign_at(j.lo) != 0 && g.sign_at(j.hi) != 0) {
            out.emplace_back(j.lo, j.hi);
            continue;
        }
        BigRat mid = (j.lo + j.hi) / 2;
        int left = count_open(j.lo, mid);
        bool mid_root = g.sign_at(mid) == 0;
        if (mid_root)
            out.emplace_back(mid, mid);
        stack.push_back({j.lo, mid, left});
        stack.push_back({mid, j.hi, j.count - left - (mid_root ? 1 : 0)});
    }
    std::sort(out.begin(), out.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo() < y.lo(); });
    return out;
}

/// Shrinks an isolating interval of the squarefree part of f below `width`.
/// Point intervals are returned unchanged.
inline RatInterval refine_root(const UPoly& f, RatInterval iv, const BigRat& width)
{
    if (iv.is_point())
        return iv;
    UPoly g = f.squarefree_part();
    BigRat lo = iv.lo(), hi = iv.hi();
    int slo = g.sign_at(lo);
    if (slo == 0 || g.sign_at(hi) == 0 || slo == g.sign_at(hi))
        throw Error("refine_root: interval is not isolating");
    while (hi - lo >= width) {
        BigRat mid = (lo + hi) / 2;
        int s = g.sign_at(mid);
        if (s == 0)
            return RatInterval(mid, mid);
        if (s == slo)
            lo = mid;
        else
            hi = mid;
    }
    return RatInterval(lo, hi);
}

} // namespace symmetroid

#endif // SYMMETROID_UPOLY_HPP
