#pragma once

#include "isoperim/grid_measure.hpp"

namespace isoperim {

/// Tridiagonal diffusion generator in conductance form, reversible for the
/// grid measure, with Neumann closure at the window ends.
struct Generator {
    GridMeasure gm;
    /// Edge conductances, size n - 1; c_i couples nodes i and i + 1.
    Eigen::ArrayXd conductance;
    /// Largest R >= 0 with V'' >= -R along the grid, V = -log density.
    double curvature_lower = 0.0;
};

Generator make_generator(const LineMeasure& m, const GridMeasure& gm);

Eigen::ArrayXd apply_generator(const Generator& g, const Eigen::ArrayXd& f);

/// Crank-Nicolson evolution with a fixed step; runs with the same step
/// compose exactly, which the semigroup identity checks rely on.
Eigen::ArrayXd evolve_steps(const Generator& g, Eigen::ArrayXd f, double dt, int steps);

/// P_t f with automatic step halving until successive solutions agree to
/// 1e-8 in the weighted norm.
Eigen::ArrayXd evolve(const Generator& g, const Eigen::ArrayXd& f, double t);

/// Results of the basic semigroup sanity checks at time t.
struct SemigroupChecks {
    double mass_error = 0.0;         ///< |integral of P_t f - integral of f|
    double l1_excess = 0.0;          ///< max(0, |P_t f|_1 - |f|_1)
    double composition_error = 0.0;  ///< |int f P_2t f - int (P_t f)^2|
};

SemigroupChecks semigroup_checks(const Generator& g, const Eigen::ArrayXd& f, double t);

}  // namespace isoperim
