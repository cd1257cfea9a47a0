#include "isoperim/line_measure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isoperim/quadrature.hpp"
#include "isoperim/roots.hpp"

namespace isoperim {

struct LineMeasure::Impl {
    Impl(Potential p, MeasureOptions o) : phi(std::move(p)), opts(o) {}
    Potential phi;
    MeasureOptions opts;
    double z = 0.0;
    double trunc = 0.0;
    double deep = 0.0;
    double h = 0.0;
    std::vector<double> tail;  // tail[i] = mu([i h, infinity)), size table_size + 1

    double density(double x) const { return std::exp(-phi(x)) / z; }

    double tail_from(double x) const {
        // Direct quadrature out to where the exponent has dropped by 80.
        double far = std::max(2.0 * x, x + 1.0);
        int guard = 0;
        while (phi(far) < phi(x) + 80.0 && guard++ < 2000) far *= 2.0;
        const double mid = std::min(x + 1.0, far);
        auto r = quad::integrate([this](double u) { return density(u); }, {x, mid, far},
                                 {1e-300, 1e-13, 4096});
        return r.value;
    }

    double upper_tail(double x) const {
        if (x < 0.0) return 1.0 - upper_tail(-x);
        if (x >= deep) return tail_from(x);
        const int m = static_cast<int>(tail.size()) - 1;
        int k = std::min(static_cast<int>(x / h), m - 1);
        const double hi = h * (k + 1);
        auto r = quad::integrate([this](double u) { return density(u); }, x, hi,
                                 {1e-300, 1e-14, 16});
        return tail[k + 1] + r.value;
    }

    double tail_quantile(double t) const {
        // Solves upper_tail(x) = t for x > 0, t in (0, 1/2).
        const int m = static_cast<int>(tail.size()) - 1;
        if (t <= tail[m]) return te_inverse_mag(t);
        int lo = 0, hi = m;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            if (tail[mid] >= t) lo = mid; else hi = mid;
        }
        auto f = [&](double x) { return -upper_tail(x); };
        auto df = [this](double x) { return density(x); };
        return roots::newton_increasing(f, df, -t, h * lo, h * (lo + 1),
                                        [t](double r) { return std::abs(r) <= 1e-13 * t; });
    }

    double te_mag(double a) const {
        const double d = phi.deriv(a);
        if (d == 0.0) return std::numeric_limits<double>::infinity();
        return std::exp(-phi(a)) / (z * d);
    }

    double te_inverse_mag(double t) const {
        double a_hi = 1.0;
        int guard = 0;
        while (te_mag(a_hi) > t && guard++ < 2000) a_hi *= 2.0;
        if (te_mag(a_hi) > t)
            throw std::runtime_error("tail equivalent does not decay to the requested level");
        double a_lo = std::min(1.0, a_hi);
        guard = 0;
        while (te_mag(a_lo) < t && guard++ < 200) a_lo *= 0.5;
        if (te_mag(a_lo) < t)
            throw std::domain_error("tail equivalent never reaches the requested level");
        return roots::bisect([&](double a) { return -te_mag(a); }, a_lo, a_hi, -t);
    }
};

LineMeasure::LineMeasure(Potential phi, MeasureOptions opts) {
    if (!(opts.truncation_scale >= 1.0))
        throw std::invalid_argument("measure options: truncation_scale must be >= 1");
    if (opts.table_size < 64)
        throw std::invalid_argument("measure options: table_size must be >= 64");

    auto impl = std::make_shared<Impl>(std::move(phi), opts);

    const auto& V = impl->phi;
    double far = 1.0;
    int guard = 0;
    while (V(far) < V(0.0) + 85.0 && guard++ < 2000) far *= 2.0;
    if (V(far) < V(0.0) + 85.0)
        throw std::invalid_argument("measure: potential grows too slowly to normalize");
    auto zr = quad::integrate([&V](double x) { return std::exp(-V(x)); },
                              {0.0, std::min(1.0, far), far}, {1e-300, 1e-13, 8192});
    if (!zr.converged) throw std::runtime_error("measure: normalization quadrature failed");
    impl->z = 2.0 * zr.value;

    if (auto te = V.tabulated_end()) {
        const double d = V.deriv(*te);
        if (d <= 0.0 || std::exp(-V(*te)) / (impl->z * d) > 1e-13)
            throw std::invalid_argument(
                "measure: tabulated potential ends while the tail is still significant; "
                "extend the table until exp(-phi)/(Z phi') drops below 1e-13");
    }

    impl->trunc = opts.truncation_scale * impl->te_inverse_mag(1e-13);
    impl->deep = opts.truncation_scale * impl->te_inverse_mag(1e-24);
    const int m = opts.table_size;
    impl->h = impl->deep / m;

    std::vector<double> mass(m);
    for (int i = 0; i < m; ++i) {
        auto r = quad::integrate([&impl](double u) { return impl->density(u); },
                                 impl->h * i, impl->h * (i + 1), {1e-300, 1e-14, 32});
        mass[i] = r.value;
    }
    impl->tail.assign(m + 1, 0.0);
    impl->tail[m] = impl->tail_from(impl->deep);
    for (int i = m - 1; i >= 0; --i) impl->tail[i] = impl->tail[i + 1] + mass[i];

    if (std::abs(2.0 * impl->tail[0] - 1.0) > 1e-9)
        throw std::runtime_error("measure: half mass check failed; quadratures disagree");
    impl_ = impl;
}

LineMeasure LineMeasure::from_recipe(const json& recipe, MeasureOptions opts) {
    return LineMeasure(Potential::from_recipe(recipe), opts);
}

const Potential& LineMeasure::potential() const { return impl_->phi; }
const json& LineMeasure::recipe() const { return impl_->phi.recipe(); }
double LineMeasure::normalization() const { return impl_->z; }
double LineMeasure::truncation() const { return impl_->trunc; }
double LineMeasure::deep_truncation() const { return impl_->deep; }
bool LineMeasure::log_concave() const { return impl_->phi.convex(); }

double LineMeasure::density(double x) const { return impl_->density(x); }
double LineMeasure::upper_tail(double x) const { return impl_->upper_tail(x); }
double LineMeasure::cdf(double x) const { return impl_->upper_tail(-x); }

double LineMeasure::quantile(double t) const {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("quantile: needs t in (0,1)");
    if (t == 0.5) return 0.0;
    if (t < 0.5) return -impl_->tail_quantile(t);
    return impl_->tail_quantile(1.0 - t);
}

double LineMeasure::tail_equivalent(double y) const {
    if (!(y < 0.0)) throw std::domain_error("tail_equivalent: needs a point strictly below the median");
    const double d = impl_->phi.deriv(y);
    if (d == 0.0) throw std::domain_error("tail_equivalent: potential slope vanishes at this point");
    return std::exp(-impl_->phi(y)) / (impl_->z * d);
}

double LineMeasure::tail_equivalent_inverse(double t) const {
    if (!(t > 0.0 && t < 0.5)) throw std::domain_error("tail_equivalent_inverse: needs t in (0, 1/2)");
    return -impl_->te_inverse_mag(t);
}

}  // namespace isoperim
