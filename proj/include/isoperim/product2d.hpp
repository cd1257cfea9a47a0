#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoperim/line_measure.hpp"

namespace isoperim {

/// Candidate sets for the two-fold product measure.
enum class Shape { CoordinateHalfPlane, RotatedHalfPlane, Ball, Square };

std::string shape_name(Shape s);

/// Product mass of the candidate set. Parameters: threshold c for half-planes
/// ({x <= c}, {x cos a + y sin a <= c}), radius for the ball, half-side for
/// the centered square. angle is used by the rotated half-plane only.
double set_measure_2d(const LineMeasure& m, Shape shape, double param, double angle);

/// Product-density perimeter integral of the candidate boundary.
double boundary_measure_2d(const LineMeasure& m, Shape shape, double param, double angle);

/// Solves set_measure_2d = mass for the shape parameter.
double solve_parameter_2d(const LineMeasure& m, Shape shape, double mass, double angle);

struct CandidateRow {
    Shape shape = Shape::CoordinateHalfPlane;
    double parameter = 0.0;
    double angle = 0.0;
    double mass = 0.0;
    double boundary = 0.0;
    double ratio_to_halfplane = 1.0;
    bool reached = true;
    std::string note;
};

struct MassSummary {
    double mass = 0.0;
    double halfplane_boundary = 0.0;
    double min_boundary = 0.0;
    Shape min_shape = Shape::CoordinateHalfPlane;
    double halfplane_over_min = 1.0;
    /// Tail comparison curve of the factor measure at this mass.
    double comparison_curve = 0.0;
    /// min_boundary / comparison_curve, the profile factor reached here.
    double min_over_curve = 0.0;
    bool k_pass = true;
};

struct ProductComparison {
    std::vector<CandidateRow> rows;
    std::vector<MassSummary> summaries;
    /// sup over masses of halfplane / min candidate (half-plane optimality gap).
    double k_empirical = 1.0;
    /// inf over masses of min candidate / comparison curve (scanned K).
    double k_profile = 0.0;
    std::optional<double> k_claimed;

    /// True when no claimed constant is violated at any mass.
    bool pass() const;
    json to_json() const;
    void write_csv(const std::string& path) const;
};

/// Equal-mass comparison of the four candidate families. Masses must lie in
/// (0, 1/2]; k_claimed, when given, asserts that at every mass the best
/// candidate boundary stays above k_claimed times the comparison curve.
ProductComparison compare_candidates(const LineMeasure& m, const std::vector<double>& masses,
                                     std::optional<double> k_claimed, double angle);

}  // namespace isoperim
