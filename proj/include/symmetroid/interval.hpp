#ifndef SYMMETROID_INTERVAL_HPP
#define SYMMETROID_INTERVAL_HPP

#include "bigint.hpp"

#include <algorithm>
#include <string>

namespace symmetroid {

/// Closed interval [lo, hi] with rational endpoints. Every operation returns an
/// interval containing all values of the exact operation on members.
class RatInterval
{
public:
    RatInterval() = default;
    RatInterval(const BigRat& point) : lo_(point), hi_(point) {}
    RatInterval(const BigRat& lo, const BigRat& hi) : lo_(lo), hi_(hi)
    {
        if (lo > hi)
            throw Error("RatInterval: lo > hi");
    }
    RatInterval(long v) : lo_(v), hi_(v) {}

    const BigRat& lo() const { return lo_; }
    const BigRat& hi() const { return hi_; }
    BigRat width() const { return hi_ - lo_; }
    BigRat midpoint() const { return (lo_ + hi_) / 2; }
    bool is_point() const { return lo_ == hi_; }

    bool contains(const BigRat& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }

    /// +1 or -1 when the sign is constant on the interval, 0 when undetermined
    /// (including the point interval {0}).
    int certain_sign() const
    {
        if (lo_ > 0)
            return 1;
        if (hi_ < 0)
            return -1;
        return 0;
    }

    RatInterval operator-() const { return RatInterval(-hi_, -lo_); }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b)
    {
        return RatInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b)
    {
        return RatInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b)
    {
        if (a.is_point() && b.is_point())
            return RatInterval(BigRat(a.lo_ * b.lo_));
        BigRat p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return RatInterval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
    }

    RatInterval& operator+=(const RatInterval& o) { return *this = *this + o; }
    RatInterval& operator-=(const RatInterval& o) { return *this = *this - o; }
    RatInterval& operator*=(const RatInterval& o) { return *this = *this * o; }

    /// Exact-range square; tighter than x*x when the interval straddles 0.
    RatInterval square() const
    {
        if (lo_ >= 0)
            return RatInterval(BigRat(lo_ * lo_), BigRat(hi_ * hi_));
        if (hi_ <= 0)
            return RatInterval(BigRat(hi_ * hi_), BigRat(lo_ * lo_));
        BigRat m = std::max(BigRat(lo_ * lo_), BigRat(hi_ * hi_));
        return RatInterval(BigRat(0), m);
    }

    std::string str() const { return "[" + lo_.get_str() + ", " + hi_.get_str() + "]"; }

private:
    BigRat lo_{0};
    BigRat hi_{0};
};

} // namespace symmetroid

#endif // SYMMETROID_INTERVAL_HPP
