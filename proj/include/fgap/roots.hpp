#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "fgap/errors.hpp"

namespace fgap {

// Bisection until the bracket is narrower than width. Requires a sign change.
template <class F>
double bisect(F&& f, double lo, double hi, double width) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) throw BracketError("bisect: no sign change in bracket");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Brent's method (Brent 1973, zero()).
template <class F>
double brent(F&& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb)) throw BracketError("brent: no sign change in bracket");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.2e-16 * std::abs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) < tol1 || std::abs(fa) <= std::abs(fb)) {
            d = m;
            e = m;
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (m > 0 ? tol1 : -tol1);
        fb = f(b);
        if (std::signbit(fb) == std::signbit(fc)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
    }
    return b;
}

}  // namespace fgap
