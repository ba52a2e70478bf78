#pragma once

#include "incr/error.hpp"
#include "incr/numeric.hpp"

namespace incr {

/// Closed segment [lo, hi] with lo < hi, over either scalar type.
/// Infinite double endpoints are allowed (whole-line domains).
template <class S>
struct BasicInterval {
    S lo;
    S hi;

    BasicInterval(S lo_, S hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (!(lo < hi))
            throw Error(Errc::BadInterval, "interval requires lo < hi");
    }

    S width() const { return S(hi - lo); }
    S midpoint() const { return S((lo + hi) / 2); }
    bool contains(const S& x) const { return lo <= x && x <= hi; }
    bool contains(const BasicInterval& other) const { return lo <= other.lo && other.hi <= hi; }
};

using Interval = BasicInterval<double>;
using RatInterval = BasicInterval<Rat>;

inline Interval to_float_interval(const RatInterval& iv) {
    return Interval(to_double(iv.lo), to_double(iv.hi));
}

} // namespace incr
