#pragma once

#include <string>
#include <vector>

#include "isoperim/line_measure.hpp"
#include "isoperim/rates.hpp"

namespace isoperim {

/// Values beyond this are reported as divergent rather than as numbers.
inline constexpr double kDivergenceSentinel = 1e12;

/// Capacity of the half-line at x relative to the median side: the
/// reciprocal of the weight integral of 1/rho between x and the median.
/// Returns infinity at the median itself.
double capacity_halfline(const LineMeasure& m, double x);

struct HardyConstants {
    double b_minus = 0.0;
    double b_plus = 0.0;
    double argmax_minus = 0.0;
    double argmax_plus = 0.0;
    bool divergent = false;
    double max_constant() const { return b_minus > b_plus ? b_minus : b_plus; }
};

/// Hardy-type supremum constants for the weighted-variance inequality with
/// rate T. The measures here are symmetric, so both sides share one scan and
/// the minus side mirrors the plus side.
HardyConstants hardy_constants(const LineMeasure& m, const RateFunction& T, int grid_points = 512);

struct BecknerInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool divergent = false;
};

/// Certified enclosure [B/6, 20 B] of the optimal weighted-variance constant.
BecknerInterval beckner_constant_interval(const LineMeasure& m, const RateFunction& T);
BecknerInterval beckner_constant_interval(const HardyConstants& h);

/// Closed form for the supremum of an indicator-weighted integral under the
/// dual-norm budget k: q_a (1 - (1 + (k - q_total)/q_a)^{(a-1)/a}).
double supA_closed_form(double q_total, double q_a, double k, double a);

/// sup over s >= 1 of (a / (1 + (s-1) a)) / beta(s), by log-grid scan with
/// golden refinement; the point s = 1/a is always sampled.
double capacity_condition_sup(const BetaFunction& beta, double a);

struct CheckReport {
    std::string check;
    json grid;
    double worst_margin = 0.0;
    std::string verdict;  // holds | fails | inconclusive
    json details;
    bool passed() const { return verdict == "holds"; }
    json to_json() const;
};

/// For each t, compares the half-line capacity at the t-quantile against
/// t / beta(1/t) and against the dilation-supremum form; margins reported,
/// violations do not throw.
CheckReport capacity_measure_check(const LineMeasure& m, const BetaFunction& beta,
                                   const std::vector<double>& t_grid);
CheckReport capacity_measure_check(const LineMeasure& m, const BetaFunction& beta);

/// Tail scan of |V'|^2 T(1/(V + log|V'|)) split by reached tail depth;
/// positive non-decaying infimum means the sufficient growth criterion
/// holds.
CheckReport laplace_sufficient_check(const LineMeasure& m, const RateFunction& T);

}  // namespace isoperim
