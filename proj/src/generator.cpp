#include "isoperim/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace isoperim {

namespace {

/// Solves the Crank-Nicolson step (I - dt/2 L) out = (I + dt/2 L) f by the
/// Thomas algorithm; a and c hold dt/2 * conductance / weight for the lower
/// and upper couplings of each row.
void cn_step(const Eigen::ArrayXd& a, const Eigen::ArrayXd& c, Eigen::ArrayXd& f,
             Eigen::ArrayXd& rhs, Eigen::ArrayXd& diag) {
    const Eigen::Index n = f.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        double v = (1.0 - a(i) - c(i)) * f(i);
        if (i > 0) v += a(i) * f(i - 1);
        if (i + 1 < n) v += c(i) * f(i + 1);
        rhs(i) = v;
        diag(i) = 1.0 + a(i) + c(i);
    }
    for (Eigen::Index i = 1; i < n; ++i) {
        const double w = a(i) / diag(i - 1);
        diag(i) -= w * c(i - 1);
        rhs(i) += w * rhs(i - 1);
    }
    f(n - 1) = rhs(n - 1) / diag(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i)
        f(i) = (rhs(i) + c(i) * f(i + 1)) / diag(i);
}

/// Backward-Euler steps (I - dt L) out = f; used to damp the high-frequency
/// content of sharp initial data before the trapezoidal sweep takes over.
void be_steps(const Generator& g, Eigen::ArrayXd& f, double dt, int steps) {
    const Eigen::Index n = f.size();
    Eigen::ArrayXd a(n), c(n), rhs(n), diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i) = i > 0 ? dt * g.conductance(i - 1) / g.gm.weights(i) : 0.0;
        c(i) = i + 1 < n ? dt * g.conductance(i) / g.gm.weights(i) : 0.0;
    }
    for (int s = 0; s < steps; ++s) {
        for (Eigen::Index i = 0; i < n; ++i) {
            rhs(i) = f(i);
            diag(i) = 1.0 + a(i) + c(i);
        }
        for (Eigen::Index i = 1; i < n; ++i) {
            const double w = a(i) / diag(i - 1);
            diag(i) -= w * c(i - 1);
            rhs(i) += w * rhs(i - 1);
        }
        f(n - 1) = rhs(n - 1) / diag(n - 1);
        for (Eigen::Index i = n - 2; i >= 0; --i)
            f(i) = (rhs(i) + c(i) * f(i + 1)) / diag(i);
    }
}

}  // namespace

Generator make_generator(const LineMeasure& m, const GridMeasure& gm) {
    Generator g;
    g.gm = gm;
    const int n = gm.size();
    const double h = gm.spacing;
    g.conductance.resize(n - 1);
    for (int i = 0; i + 1 < n; ++i)
        g.conductance(i) = std::sqrt(gm.weights(i) * gm.weights(i + 1)) / (h * h);

    const auto& phi = m.potential();
    double min_d2 = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double d2 =
            (phi(gm.nodes(i - 1)) - 2.0 * phi(gm.nodes(i)) + phi(gm.nodes(i + 1))) / (h * h);
        if (d2 < min_d2) min_d2 = d2;
    }
    g.curvature_lower = -min_d2;
    if (g.curvature_lower < 1e-7) g.curvature_lower = 0.0;
    return g;
}

Eigen::ArrayXd apply_generator(const Generator& g, const Eigen::ArrayXd& f) {
    const Eigen::Index n = f.size();
    if (n != g.gm.nodes.size()) throw std::invalid_argument("apply_generator: size mismatch");
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double v = 0.0;
        if (i > 0) v += g.conductance(i - 1) * (f(i - 1) - f(i));
        if (i + 1 < n) v += g.conductance(i) * (f(i + 1) - f(i));
        out(i) = v / g.gm.weights(i);
    }
    return out;
}

Eigen::ArrayXd evolve_steps(const Generator& g, Eigen::ArrayXd f, double dt, int steps) {
    const Eigen::Index n = f.size();
    if (n != g.gm.nodes.size()) throw std::invalid_argument("evolve_steps: size mismatch");
    if (!(dt > 0.0)) throw std::domain_error("evolve_steps: dt must be positive");
    if (steps < 0) throw std::domain_error("evolve_steps: steps must be nonnegative");
    Eigen::ArrayXd a(n), c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i) = i > 0 ? 0.5 * dt * g.conductance(i - 1) / g.gm.weights(i) : 0.0;
        c(i) = i + 1 < n ? 0.5 * dt * g.conductance(i) / g.gm.weights(i) : 0.0;
    }
    Eigen::ArrayXd rhs(n), diag(n);
    for (int s = 0; s < steps; ++s) cn_step(a, c, f, rhs, diag);
    return f;
}

namespace {

/// One refinement level: two damped backward-Euler half steps on the sharp
/// initial data, then trapezoidal stepping for the remaining time.
Eigen::ArrayXd damped_run(const Generator& g, const Eigen::ArrayXd& f, double t, long steps) {
    const double dt = t / static_cast<double>(steps);
    Eigen::ArrayXd cur = f;
    be_steps(g, cur, 0.5 * dt, 2);
    if (steps > 1) cur = evolve_steps(g, cur, dt, static_cast<int>(steps - 1));
    return cur;
}

}  // namespace

Eigen::ArrayXd evolve(const Generator& g, const Eigen::ArrayXd& f, double t) {
    if (t < 0.0) throw std::domain_error("evolve: time must be nonnegative");
    if (t == 0.0) return f;
    const double h = g.gm.spacing;
    long steps = static_cast<long>(std::ceil(t / (0.5 * h * h)));
    if (steps < 1) steps = 1;
    Eigen::ArrayXd prev = damped_run(g, f, t, steps);
    for (int pass = 0; pass < 14; ++pass) {
        steps *= 2;
        Eigen::ArrayXd next = damped_run(g, f, t, steps);
        if (weighted_norm(g.gm, next - prev) < 1e-8) return next;
        prev = std::move(next);
    }
    throw std::runtime_error("evolve: step refinement did not converge");
}

SemigroupChecks semigroup_checks(const Generator& g, const Eigen::ArrayXd& f, double t) {
    if (!(t > 0.0)) throw std::domain_error("semigroup_checks: time must be positive");
    const double h = g.gm.spacing;
    long steps = static_cast<long>(std::ceil(t / (0.5 * h * h)));
    if (steps < 1) steps = 1;
    const double dt = t / static_cast<double>(steps);
    const Eigen::ArrayXd pt = evolve_steps(g, f, dt, static_cast<int>(steps));
    const Eigen::ArrayXd p2t = evolve_steps(g, pt, dt, static_cast<int>(steps));

    SemigroupChecks out;
    out.mass_error = std::abs(grid_integral(g.gm, pt) - grid_integral(g.gm, f));
    out.l1_excess =
        std::max(0.0, grid_integral(g.gm, pt.abs()) - grid_integral(g.gm, f.abs()));
    out.composition_error =
        std::abs(grid_integral(g.gm, f * p2t) - grid_integral(g.gm, pt * pt));
    return out;
}

}  // namespace isoperim
