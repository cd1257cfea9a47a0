#pragma once

#include <array>

#include <Eigen/Dense>

#include "isoperim/line_measure.hpp"

namespace isoperim {

/// Uniform-node discretization; weights are panel masses of [x_i - h/2,
/// x_i + h/2], renormalized to sum to one.
struct GridMeasure {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
    double spacing = 0.0;
    /// Raw panel-mass sum before normalization.
    double renormalization = 1.0;
    int size() const { return static_cast<int>(nodes.size()); }
    double window_lo() const { return nodes(0); }
    double window_hi() const { return nodes(nodes.size() - 1); }
};

GridMeasure discretize(const LineMeasure& m, int n_points, std::array<double, 2> window);
/// Window defaults to [-X, X] at the truncation bound.
GridMeasure discretize(const LineMeasure& m, int n_points);

double grid_integral(const GridMeasure& gm, const Eigen::ArrayXd& f);
double weighted_norm(const GridMeasure& gm, const Eigen::ArrayXd& f);
/// Sum over edges of sqrt(w_i w_{i+1}) ((f_{i+1} - f_i) / h)^2; matches the
/// generator's energy identity exactly.
double dirichlet_energy(const GridMeasure& gm, const Eigen::ArrayXd& f);

}  // namespace isoperim
