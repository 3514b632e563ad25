#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace blotto::detail {

// Bisection for f(x) = target with f nondecreasing on [lo, hi].
// Requires f(lo) <= target <= f(hi). Converges to relative width `rel_tol`
// (floored at 1 for roots near zero). Monotonicity makes this unconditionally
// convergent, which is why every solver in this library funnels through it.
template <typename F>
double bisect_increasing(F&& f, double target, double lo, double hi,
                         double rel_tol = 1e-12) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect_increasing: bad bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > target || fhi < target)
        throw std::runtime_error("bisect_increasing: bracket does not contain target (f(" +
                                 std::to_string(lo) + ")=" + std::to_string(flo) + ", f(" +
                                 std::to_string(hi) + ")=" + std::to_string(fhi) +
                                 ", target=" + std::to_string(target) + ")");
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // double resolution reached
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) <= rel_tol * (std::abs(lo) + std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Grows `hi` by doubling until f(hi) >= target, capped at `limit`. Returns the
// expanded bound. Throws if the target is unreachable below the cap.
template <typename F>
double expand_upper(F&& f, double target, double hi0,
                    double limit = std::numeric_limits<double>::infinity()) {
    double hi = hi0;
    for (int it = 0; it < 2048; ++it) {
        if (hi > limit) hi = limit;
        if (f(hi) >= target) return hi;
        if (hi >= limit)
            throw std::runtime_error("expand_upper: target unreachable within domain");
        hi *= 2.0;
    }
    throw std::runtime_error("expand_upper: bracket expansion did not terminate");
}

}  // namespace blotto::detail
