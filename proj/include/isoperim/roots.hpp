#pragma once

#include <cmath>
#include <stdexcept>

namespace isoperim::roots {

/// Root of f(x) = target on a bracket [lo, hi]; f monotone in either direction.
template <class F>
double bisect(F&& f, double lo, double hi, double target, double xtol_rel = 1e-15, int max_iter = 200) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::domain_error("bisect: target not bracketed");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid) - target;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo <= xtol_rel * (std::abs(lo) + std::abs(hi) + 1e-300)) break;
    }
    return 0.5 * (lo + hi);
}

/// Newton iteration for increasing f with bisection safeguard. stop(residual)
/// decides convergence; df is the true derivative.
template <class F, class DF, class Stop>
double newton_increasing(F&& f, DF&& df, double target, double lo, double hi, Stop&& stop, int max_iter = 100) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double r = f(x) - target;
        if (stop(r)) return x;
        if (r > 0.0) hi = x; else lo = x;
        const double d = df(x);
        double xn = (d > 0.0) ? x - r / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) return x;
        x = xn;
    }
    return x;
}

/// Golden-section maximizer of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double xtol, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    constexpr double invphi2 = 0.3819660112501051;
    double c = a + invphi2 * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = a + invphi2 * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace isoperim::roots
