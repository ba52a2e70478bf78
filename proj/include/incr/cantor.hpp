#pragma once

#include <utility>
#include <vector>

#include "incr/interval.hpp"
#include "incr/numeric.hpp"

namespace incr {

/// Maximum construction depth: 3^30 still fits comfortably in exact
/// integers and 2^(1-n) is far below any useful tolerance beyond it.
inline constexpr int kMaxStaircaseLevel = 30;

/**
 * Level n of the devil's-staircase construction: the 2^n closed intervals
 * [a/3^n, (a+1)/3^n] (ternary digits of a all 0 or 2) on which the level-n
 * approximant rises with slope (3/2)^n, and the complementary gaps inside
 * [0,1] with the constant value the approximant takes there.
 */
struct StaircaseLevel {
    int n = 0;
    std::vector<RatInterval> intervals;                 // ascending
    std::vector<std::pair<RatInterval, Rat>> plateaus;  // gap -> constant value, ascending
};

/// LevelTooDeep when n < 0 or n > 30.
StaircaseLevel kn_intervals(int n);

/**
 * The piecewise-affine approximant f_n: f_0(x) = x, then
 * f_n = (1/2) f_{n-1}(3x) on [0,1/3], 1/2 on (1/3,2/3),
 * 1/2 + (1/2) f_{n-1}(3x-2) on [2/3,1]. Nondecreasing, f_n(0)=0, f_n(1)=1,
 * |f_{n+1}-f_n| <= 2^-n. OutOfUnitInterval outside [0,1].
 */
double staircase_eval(int n, double x);
Rat staircase_eval_exact(int n, const Rat& x);

/// Smallest level n with 2^(1-n) <= tol, so f_n is within tol of the limit
/// function everywhere. TolTooSmall when that level exceeds 30; BadParam
/// when tol <= 0.
int staircase_level_for_tol(double tol);

/// Uniform-limit device: staircase_eval at staircase_level_for_tol(tol).
double staircase_limit(double x, double tol);

} // namespace incr
