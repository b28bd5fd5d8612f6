#pragma once

// Scalar numerical kernels shared by the catalog modules: adaptive Simpson
// quadrature and bracketed bisection.

#include <cmath>
#include <functional>
#include <string>

#include "pdem/error.hpp"

namespace pdem::numerics {

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, int& evals) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (!std::isfinite(delta)) {
        throw NumericError("adaptive Simpson: non-finite integrand near x = " + std::to_string(m));
    }
    if (depth <= 0) {
        throw NumericError("adaptive Simpson: recursion limit hit near x = " + std::to_string(m) +
                           " (non-integrable singularity?)");
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// Returns -integral when b < a. Throws NumericError on non-finite values or
/// when the recursion limit is exhausted.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-10, int max_depth = 50) {
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -adaptive_simpson(f, b, a, tol, max_depth);
    }
    // Split into a few panels first; a single coarse Simpson estimate can
    // accidentally agree with its halves on oscillatory or peaked integrands.
    constexpr int panels = 8;
    const double w = (b - a) / panels;
    double total = 0.0;
    int evals = 0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * w;
        const double hi = (i + 1 == panels) ? b : lo + w;
        const double fa = f(lo);
        const double fb = f(hi);
        const double fm = f(0.5 * (lo + hi));
        evals += 3;
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / panels, max_depth, evals);
    }
    return total;
}

/// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign,
/// by plain bisection until the bracket is narrower than `tol`.
template <typename F>
double bisect_root(const F& f, double lo, double hi, double tol = 1e-12, int max_iter = 400) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw NumericError("bisect_root: root not bracketed");
    }
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace pdem::numerics
