#pragma once

#include "incr/witness.hpp"

// Shared dichotomy builder. The public witness entry points add their
// orientation/endpoint preconditions on top; the inequality checkers reuse the
// same core to attach counter-witnesses without any orientation gate.
namespace incr::detail {

enum class BoundKind {
    AbsFloor,    // |f(b_n)-f(a_n)| >= |d|/2^n
    SignedFloor, // f(b_n)-f(a_n) >= d/2^n
    SignedCeil,  // f(b_n)-f(a_n) <= d/2^n
};

BisectionTrace<double> bisect_trace(const Fn1D& f, const Interval& iv, BoundKind kind, int levels,
                                    HalvingRule rule);
BisectionTrace<Rat> bisect_trace_exact(const Fn1D& f, const RatInterval& iv, BoundKind kind,
                                       int levels, HalvingRule rule);

} // namespace incr::detail
