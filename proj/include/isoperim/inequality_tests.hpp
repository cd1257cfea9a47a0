#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoperim/generator.hpp"
#include "isoperim/grid_measure.hpp"
#include "isoperim/line_measure.hpp"
#include "isoperim/rates.hpp"

namespace isoperim {

/// Deterministic family of trial functions: Gaussian bumps, mollified steps,
/// clipped low-degree polynomials, plus a fixed adversarial set of tail ramps
/// and growing exponentials. Trial i depends only on (seed, i), so evaluation
/// order and thread count never change the result.
struct TrialFamily {
    std::uint64_t seed = 1;
    int bumps = 200;
    int ramps = 200;
    int polynomials = 100;
    bool adversarial = true;

    int count() const;
    /// Builds trial i on the grid; the measure supplies quantiles and slopes
    /// for the adversarial block.
    Eigen::ArrayXd make(int index, const GridMeasure& gm, const LineMeasure& m) const;
    /// Short label for the block trial i belongs to.
    std::string kind(int index) const;
    json to_json() const;
};

/// Outcome of a randomized functional-inequality check.
struct TrialReport {
    std::string inequality;
    json measure;
    json grid;
    json params;
    json family;
    std::uint64_t seed = 0;
    double worst_ratio = 0.0;
    double threshold = 0.0;
    int trials = 0;
    int skipped = 0;
    json worst_case;

    bool pass() const { return worst_ratio <= threshold; }
    json to_json() const;
};

/// Worst ratio of (int f^2 - s (int |f|)^2) / (beta(s) E(f, f)) over the
/// family and the s grid; the certified bound is 8, tested with 5% headroom.
TrialReport super_poincare_test(const LineMeasure& m, const GridMeasure& gm,
                                const BetaFunction& beta, const std::vector<double>& s_set,
                                const TrialFamily& family, double threshold);

/// Worst ratio of (int f^2 - (int |f|^p)^(2/p)) / (T(2 - p) E(f, f)) against
/// a candidate constant with 5% headroom.
TrialReport beckner_test(const LineMeasure& m, const GridMeasure& gm, const RateFunction& T,
                         double candidate_constant, const std::vector<double>& p_set,
                         const TrialFamily& family);

/// Worst ratio of int f^2 F(f^2 / int f^2) / E(f, f) against the candidate
/// constant of F with 5% headroom.
TrialReport fsobolev_test(const LineMeasure& m, const GridMeasure& gm, const FSpec& F,
                          const TrialFamily& family);

/// Margin of the semigroup decay bound at time t and parameter s, with b the
/// decay rate at s (callers fold measured headroom into b):
/// e^{-2t/b} int f^2 + s (1 - e^{-2t/b}) (int |f|)^2 - int (P_t f)^2.
double wang_decay_margin(const Generator& g, const Eigen::ArrayXd& f, double b, double s,
                         double t);

/// Finite unions of intervals; +-infinity endpoints are allowed.
using IntervalSet = std::vector<std::array<double, 2>>;

/// Indicator of a union of intervals with endpoints snapped to grid nodes and
/// one-cell ramps placed outside the set, so f >= 1 on the set itself.
struct MollifiedSet {
    Eigen::ArrayXd f;
    IntervalSet snapped;
};

MollifiedSet mollified_indicator(const GridMeasure& gm, const IntervalSet& a);

/// Coefficient of the heat-flow isoperimetric bound under curvature lower
/// bound -R: sqrt(t) for R = 0, otherwise atanh(sqrt(1 - e^{-4Rt}))/(2 sqrt R).
double heat_flow_coefficient(double r, double t);

/// Margin of the heat-flow bound coef * boundary(A) - (mu(A) - int (P_t 1_A)^2)
/// for a union of intervals; boundary and mass are evaluated exactly on the
/// snapped set, the evolution runs on the grid. Callers that already evolved
/// the snapped indicator may pass it to skip the internal evolution.
double heat_flow_margin(const Generator& g, const LineMeasure& m, const IntervalSet& a, double t,
                        const Eigen::ArrayXd* evolved = nullptr);

/// Isoperimetric lower bound derived from a decay rate beta under curvature
/// lower bound -R, evaluated at profile argument p in (0, 1/2].
struct IsoLowerBound {
    double value = 0.0;
    std::string branch;  ///< "tail" or "optimized"
    double cheeger_constant = 0.0;
};

IsoLowerBound isoperimetric_lower_bound(const BetaFunction& beta, double r, double p);

}  // namespace isoperim
