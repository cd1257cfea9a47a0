#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace isoperim::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 4096;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1,1]; odd-indexed Kronrod
// abscissae (plus the centre) carry the embedded Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    value = resk * hl;
    error = std::abs((resk - resg) * hl);
}

struct Seg {
    double a, b, value, error;
    std::uint64_t id;
};
struct SegLess {
    bool operator()(const Seg& x, const Seg& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.id > y.id;  // deterministic tie break
    }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration over consecutive segments
/// [pts[0], pts[1]], ..., worst-error-first refinement.
template <class F>
Result integrate(F&& f, std::span<const double> pts, Options opt = {}) {
    if (pts.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
    std::priority_queue<detail::Seg, std::vector<detail::Seg>, detail::SegLess> heap;
    double total = 0.0, toterr = 0.0;
    std::uint64_t id = 0;
    int count = 0;
    auto push = [&](double a, double b) {
        detail::Seg s{a, b, 0.0, 0.0, id++};
        detail::gk15(f, a, b, s.value, s.error);
        total += s.value;
        toterr += s.error;
        ++count;
        heap.push(s);
    };
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i] <= pts[i + 1])) throw std::invalid_argument("integrate: breakpoints must be sorted");
        if (pts[i] < pts[i + 1]) push(pts[i], pts[i + 1]);
    }
    if (count == 0) return {0.0, 0.0, 0, true};
    while (toterr > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && count < opt.max_intervals) {
        detail::Seg worst = heap.top();
        if (worst.error == 0.0) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            worst.error = 0.0;  // cannot split further at this precision
            heap.push(worst);
            continue;
        }
        total -= worst.value;
        toterr -= worst.error;
        --count;
        push(worst.a, mid);
        push(mid, worst.b);
    }
    Result r;
    r.value = total;
    r.error = toterr;
    r.intervals = count;
    r.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return r;
}

template <class F>
Result integrate(F&& f, std::initializer_list<double> pts, Options opt = {}) {
    std::vector<double> v(pts);
    return integrate(static_cast<F&&>(f), std::span<const double>(v), opt);
}

template <class F>
Result integrate(F&& f, double a, double b, Options opt = {}) {
    const double pts[2] = {a, b};
    return integrate(static_cast<F&&>(f), std::span<const double>(pts, 2), opt);
}

}  // namespace isoperim::quad
