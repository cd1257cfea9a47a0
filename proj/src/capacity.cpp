#include "isoperim/capacity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isoperim/quadrature.hpp"
#include "isoperim/roots.hpp"

namespace isoperim {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = lo * std::pow(hi / lo, double(k) / (n - 1));
    return g;
}

double inv_rho_integral(const LineMeasure& m, double lo, double hi) {
    auto r = quad::integrate([&m](double u) { return 1.0 / m.density(u); }, lo, hi,
                             {1e-300, 1e-11, 8192});
    return r.value;
}

}  // namespace

double capacity_halfline(const LineMeasure& m, double x) {
    const double a = std::abs(x - m.median());
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    // The integrand 1/rho peaks at the far endpoint on the scale 1/Phi';
    // panels are graded geometrically from there.
    std::vector<double> pts{a};
    double width = 1.0 / std::max(1.0, m.potential().deriv(a));
    double cur = a;
    while (cur - width > 0.0) {
        cur -= width;
        pts.push_back(cur);
        width *= 2.0;
    }
    pts.push_back(0.0);
    std::reverse(pts.begin(), pts.end());
    return 1.0 / quad::integrate([&m](double u) { return 1.0 / m.density(u); },
                                 std::span<const double>(pts), {1e-300, 1e-11, 8192})
                     .value;
}

HardyConstants hardy_constants(const LineMeasure& m, const RateFunction& T, int grid_points) {
    if (!T.certified())
        throw std::invalid_argument("hardy constants: rate certificates fail");
    if (grid_points < 64)
        throw std::invalid_argument("hardy constants: needs at least 64 grid points");

    const int n = grid_points;
    std::vector<double> ts(n), xs(n), cum(n), f(n);
    for (int k = 0; k < n; ++k) ts[k] = 0.5 * std::pow(2e-10, double(k) / (n - 1));
    xs[0] = 0.0;
    cum[0] = 0.0;
    f[0] = 0.0;
    for (int k = 1; k < n; ++k) {
        xs[k] = m.quantile(1.0 - ts[k]);
        cum[k] = cum[k - 1] + inv_rho_integral(m, xs[k - 1], xs[k]);
    }
    auto value_at = [&m, &T](double tail, double weight) {
        return tail * weight / T(1.0 / std::log1p(1.0 / tail));
    };
    int best = 0;
    for (int k = 1; k < n; ++k) {
        f[k] = value_at(m.upper_tail(xs[k]), cum[k]);
        if (f[k] > f[best]) best = k;
    }

    const int lo = std::max(best - 1, 0);
    const int hi = std::min(best + 1, n - 1);
    double b = f[best];
    double arg = xs[best];
    if (xs[hi] > xs[lo]) {
        auto fx = [&](double x) {
            return value_at(m.upper_tail(x), cum[lo] + inv_rho_integral(m, xs[lo], x));
        };
        const double xr = roots::golden_max(fx, xs[lo], xs[hi], 1e-9 * (1.0 + xs[hi] - xs[lo]));
        const double fr = fx(xr);
        if (fr > b) {
            b = fr;
            arg = xr;
        }
    }

    double deep_max = 0.0, next_max = 0.0;
    for (int k = 0; k < n; ++k) {
        if (ts[k] <= 1e-9) deep_max = std::max(deep_max, f[k]);
        else if (ts[k] <= 1e-8) next_max = std::max(next_max, f[k]);
    }

    HardyConstants h;
    h.divergent = deep_max > 1.02 * next_max || b > kDivergenceSentinel;
    h.b_plus = h.divergent ? std::numeric_limits<double>::infinity() : b;
    h.b_minus = h.b_plus;
    h.argmax_plus = arg;
    h.argmax_minus = -arg;
    return h;
}

BecknerInterval beckner_constant_interval(const HardyConstants& h) {
    BecknerInterval iv;
    iv.divergent = h.divergent;
    if (h.divergent) {
        iv.lower = iv.upper = std::numeric_limits<double>::infinity();
        return iv;
    }
    iv.lower = h.max_constant() / 6.0;
    iv.upper = 20.0 * h.max_constant();
    return iv;
}

BecknerInterval beckner_constant_interval(const LineMeasure& m, const RateFunction& T) {
    return beckner_constant_interval(hardy_constants(m, T));
}

double supA_closed_form(double q_total, double q_a, double k, double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("supA: parameter a must lie in (0,1)");
    if (!(q_a > 0.0 && q_a <= q_total)) throw std::invalid_argument("supA: needs 0 < q_a <= q_total");
    if (!(k > q_total)) throw std::domain_error("supA: budget k must exceed q_total");
    return q_a * (1.0 - std::pow(1.0 + (k - q_total) / q_a, (a - 1.0) / a));
}

double capacity_condition_sup(const BetaFunction& beta, double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("capacity condition: mass parameter must lie in (0,1)");
    auto g = [&](double s) { return (a / (1.0 + (s - 1.0) * a)) / beta(s); };
    const auto grid = log_grid(1.0, kBetaDomainEnd, 1000);
    int best = 0;
    double best_v = g(grid[0]);
    for (int k = 1; k < (int)grid.size(); ++k) {
        const double v = g(grid[k]);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    const double llo = std::log(grid[std::max(best - 1, 0)]);
    const double lhi = std::log(grid[std::min(best + 1, (int)grid.size() - 1)]);
    if (lhi > llo) {
        const double lr = roots::golden_max([&](double l) { return g(std::exp(l)); }, llo, lhi, 1e-12);
        best_v = std::max(best_v, g(std::exp(lr)));
    }
    if (1.0 / a <= kBetaDomainEnd) best_v = std::max(best_v, g(1.0 / a));
    return best_v;
}

json CheckReport::to_json() const {
    return json{{"check", check}, {"grid", grid}, {"worst_margin", worst_margin},
                {"verdict", verdict}, {"details", details}};
}

CheckReport capacity_measure_check(const LineMeasure& m, const BetaFunction& beta,
                                   const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("capacity check: empty grid");
    for (double t : t_grid)
        if (!(t > 0.0 && t < 0.5))
            throw std::domain_error("capacity check: grid points must lie in (0, 1/2)");

    CheckReport rep;
    rep.check = "capacity-vs-beta";
    double worst = std::numeric_limits<double>::infinity();
    double worst_direct = std::numeric_limits<double>::infinity();
    double worst_sup = std::numeric_limits<double>::infinity();
    double worst_t = t_grid.front();
    for (double t : t_grid) {
        const double capa = capacity_halfline(m, m.quantile(t));
        const double direct = capa * beta(1.0 / t) / t - 1.0;
        const double sup_form = capa / capacity_condition_sup(beta, t) - 1.0;
        worst_direct = std::min(worst_direct, direct);
        worst_sup = std::min(worst_sup, sup_form);
        const double here = std::min(direct, sup_form);
        if (here < worst) {
            worst = here;
            worst_t = t;
        }
    }
    rep.worst_margin = worst;
    rep.verdict = worst >= -1e-9 ? "holds" : "fails";
    rep.grid = json{{"points", t_grid.size()},
                    {"t_min", *std::min_element(t_grid.begin(), t_grid.end())},
                    {"t_max", *std::max_element(t_grid.begin(), t_grid.end())}};
    rep.details = json{{"worst_t", worst_t},
                       {"worst_direct_margin", worst_direct},
                       {"worst_sup_margin", worst_sup}};
    return rep;
}

CheckReport capacity_measure_check(const LineMeasure& m, const BetaFunction& beta) {
    return capacity_measure_check(m, beta, log_grid(1e-4, 0.49, 200));
}

CheckReport laplace_sufficient_check(const LineMeasure& m, const RateFunction& T) {
    const auto& phi = m.potential();
    const double X = m.truncation();
    const double logz = std::log(m.normalization());
    const auto xs = log_grid(X / 1000.0, X, 768);

    CheckReport rep;
    rep.check = "laplace-sufficient-growth";
    rep.grid = json{{"x_min", X / 1000.0}, {"x_max", X}, {"points", xs.size()}, {"spacing", "log"}};

    double min_slope = std::numeric_limits<double>::infinity();
    double curv[3] = {0.0, 0.0, 0.0};
    for (double x : xs) {
        const double d1 = phi.deriv(x);
        min_slope = std::min(min_slope, d1);
        const double dx = 1e-5 * x;
        const double d2 = (phi.deriv(x + dx) - phi.deriv(std::max(x - dx, 0.0))) / (2.0 * dx);
        const int decade = x <= X / 100.0 ? 0 : (x <= X / 10.0 ? 1 : 2);
        if (d1 > 0.0) curv[decade] = std::max(curv[decade], std::abs(d2) / (d1 * d1));
    }
    rep.details = json{{"min_slope", min_slope}, {"curvature_by_decade", {curv[0], curv[1], curv[2]}}};
    if (!(min_slope > 0.0)) {
        rep.verdict = "inconclusive";
        rep.details["reason"] = "potential slope vanishes in the scan region";
        return rep;
    }
    if (curv[1] > std::max(0.05, 0.7 * curv[0]) || curv[2] > std::max(0.05, 0.7 * curv[1])) {
        rep.verdict = "inconclusive";
        rep.details["reason"] = "curvature-to-slope ratio does not decay, Laplace regime not reached";
        return rep;
    }

    // Points are compared by reached tail depth arg = V + log Z + log V', not
    // by window position: where the tail regime starts depends on the measure,
    // and a fixed spatial split leaves tightly concentrated measures with an
    // empty shallow bucket.
    std::vector<std::array<double, 2>> depth_value;
    int skipped = 0;
    for (double x : xs) {
        if (x <= X / 100.0) continue;
        const double d1 = phi.deriv(x);
        const double arg = phi(x) + logz + std::log(d1);
        if (arg < 1.0) {
            ++skipped;
            continue;
        }
        depth_value.push_back({arg, d1 * d1 * T(1.0 / arg)});
    }
    rep.details["skipped_points"] = skipped;
    double depth_min = std::numeric_limits<double>::infinity();
    double depth_max = 0.0;
    for (const auto& dv : depth_value) {
        depth_min = std::min(depth_min, dv[0]);
        depth_max = std::max(depth_max, dv[0]);
    }
    if (depth_value.size() < 16 || depth_max < 1.5 * depth_min) {
        rep.verdict = "inconclusive";
        rep.details["reason"] = "scan region too small for the growth criterion";
        return rep;
    }
    const double split = std::sqrt(depth_min * depth_max);
    double inf_mid = std::numeric_limits<double>::infinity();
    double inf_far = std::numeric_limits<double>::infinity();
    for (const auto& dv : depth_value) {
        double& slot = dv[0] <= split ? inf_mid : inf_far;
        slot = std::min(slot, dv[1]);
    }
    const double trend = inf_mid > 0.0 ? inf_far / inf_mid : 0.0;
    rep.worst_margin = std::min(inf_mid, inf_far);
    rep.details["depth_split"] = split;
    rep.details["infimum"] = rep.worst_margin;
    rep.details["far_over_mid_trend"] = trend;
    rep.verdict = (rep.worst_margin > 0.0 && trend >= 0.7) ? "holds" : "fails";
    return rep;
}

}  // namespace isoperim
