#pragma once

#include <iosfwd>
#include <vector>

#include "isoperim/line_measure.hpp"

namespace isoperim {

/// Boundary density of the optimal set at mass t. For the symmetric
/// log-concave measures handled here the optimum is a half-line, so this is
/// the density at the t-quantile.
double profile_at(const LineMeasure& m, double t);

/// Tail comparison curve u Phi'(Phi^{-1}(log 1/u)) with u = min(t, 1-t).
/// Needs phi(0) < log 2 so the inverse exists on the whole range.
double comparison_profile(const Potential& phi, double t);

struct ProfileTable {
    std::vector<double> t, iso, comparison, ratio;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    void write_csv(std::ostream& os) const;
};

/// Samples profile and comparison curve on a log grid [t_min, 1/2].
ProfileTable profile_table(const LineMeasure& m, double t_min = 1e-10, int points = 200);

/// Profile against the small-mass comparison curve on a caller grid in
/// (0, 1/2]; the ratio column tracks the asymptotic-equivalence approach to 1.
ProfileTable asymptotic_ratio_scan(const LineMeasure& m, const std::vector<double>& t_grid);

/// inf over the grid of profile(m1, t) / profile(m2, t).
double domination_constant(const LineMeasure& m1, const LineMeasure& m2,
                           const std::vector<double>& t_grid);

}  // namespace isoperim
