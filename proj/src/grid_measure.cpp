#include "isoperim/grid_measure.hpp"

#include <cmath>
#include <stdexcept>

#include "isoperim/quadrature.hpp"

namespace isoperim {

GridMeasure discretize(const LineMeasure& m, int n_points, std::array<double, 2> window) {
    if (n_points < 16) throw std::invalid_argument("discretize: need at least 16 points");
    const double a = window[0];
    const double b = window[1];
    if (!(a < b)) throw std::invalid_argument("discretize: window must satisfy lo < hi");
    const double x_max = m.truncation();
    if (a < -x_max || b > x_max)
        throw std::invalid_argument("discretize: window exceeds the truncation bound of the measure");

    GridMeasure gm;
    gm.spacing = (b - a) / (n_points - 1);
    gm.nodes.resize(n_points);
    gm.weights.resize(n_points);
    for (int i = 0; i < n_points; ++i) gm.nodes(i) = a + i * gm.spacing;

    const auto rho = [&m](double x) { return m.density(x); };
    quad::Options opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-12;
    opt.max_intervals = 64;
    for (int i = 0; i < n_points; ++i) {
        const double lo = gm.nodes(i) - 0.5 * gm.spacing;
        const double hi = gm.nodes(i) + 0.5 * gm.spacing;
        gm.weights(i) = quad::integrate(rho, lo, hi, opt).value;
    }
    gm.renormalization = gm.weights.sum();
    if (!(gm.renormalization > 0.0))
        throw std::runtime_error("discretize: window carries no mass");
    gm.weights /= gm.renormalization;
    return gm;
}

GridMeasure discretize(const LineMeasure& m, int n_points) {
    const double x_max = m.truncation();
    return discretize(m, n_points, {-x_max, x_max});
}

double grid_integral(const GridMeasure& gm, const Eigen::ArrayXd& f) {
    if (f.size() != gm.nodes.size())
        throw std::invalid_argument("grid_integral: size mismatch");
    return (gm.weights * f).sum();
}

double weighted_norm(const GridMeasure& gm, const Eigen::ArrayXd& f) {
    if (f.size() != gm.nodes.size())
        throw std::invalid_argument("weighted_norm: size mismatch");
    return std::sqrt((gm.weights * f * f).sum());
}

double dirichlet_energy(const GridMeasure& gm, const Eigen::ArrayXd& f) {
    const int n = gm.size();
    if (f.size() != n) throw std::invalid_argument("dirichlet_energy: size mismatch");
    double e = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double slope = (f(i + 1) - f(i)) / gm.spacing;
        e += std::sqrt(gm.weights(i) * gm.weights(i + 1)) * slope * slope;
    }
    return e;
}

}  // namespace isoperim
