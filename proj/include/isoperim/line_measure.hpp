#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "isoperim/potential.hpp"

namespace isoperim {

struct MeasureOptions {
    /// Multiplies both computation windows; doubling it is the standard
    /// truncation-sensitivity probe.
    double truncation_scale = 1.0;
    int table_size = 2048;
};

/// Symmetric probability measure d(mu) = e^{-Phi(|x|)}/Z dx on the line with
/// median 0. Tail probabilities are tabulated from the far end, so upper_tail
/// and quantile stay relatively accurate down to about 1e-24.
class LineMeasure {
public:
    explicit LineMeasure(Potential phi, MeasureOptions opts = {});
    static LineMeasure from_recipe(const json& recipe, MeasureOptions opts = {});

    const Potential& potential() const;
    const json& recipe() const;

    double normalization() const;
    /// Window end x with tail equivalent 1e-13 (times truncation_scale).
    double truncation() const;
    /// Internal window end with tail equivalent 1e-24 (times truncation_scale).
    double deep_truncation() const;
    double median() const { return 0.0; }
    bool log_concave() const;

    double density(double x) const;
    double cdf(double x) const;
    /// mu([x, infinity)), relatively accurate for x inside the deep window.
    double upper_tail(double x) const;
    /// Inverse of cdf on (0, 1).
    double quantile(double t) const;

    /// Asymptotic lower-tail equivalent e^{-Phi(|y|)} / (Z Phi'(|y|)) at y < 0.
    double tail_equivalent(double y) const;
    /// Point y < 0 with tail_equivalent(y) = t.
    double tail_equivalent_inverse(double t) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace isoperim
