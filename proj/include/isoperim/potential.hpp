#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace isoperim {

using json = nlohmann::ordered_json;

/// Even potential x -> Phi(|x|) defining the probability density
/// e^{-Phi(|x|)} / Z on the line. Evaluations take the magnitude of their
/// argument, so callers may pass signed coordinates.
class Potential {
public:
    double operator()(double x) const { return value_(std::abs(x)); }
    /// Right derivative of Phi at |x|.
    double deriv(double x) const { return deriv_(std::abs(x)); }
    /// Inverse on [Phi(0), infinity).
    double inverse(double y) const;

    bool convex() const { return convex_; }
    bool sqrt_concave() const { return sqrt_concave_; }
    /// Regularity/concavity certificates hold for x >= smooth_from().
    double smooth_from() const { return smooth_from_; }
    std::optional<double> tabulated_end() const { return table_end_; }
    const json& recipe() const { return recipe_; }

    static Potential power(double p, double scale = 1.0);
    static Potential power_log(double p, double alpha, std::optional<double> gamma = {});
    static Potential nonconvex_example(double alpha, double eps = 0.5);
    static Potential tabulated(std::vector<double> xs, std::vector<double> phis);
    /// Builds from a measure recipe JSON ({"family": ..., ...}).
    static Potential from_recipe(const json& recipe);

private:
    Potential() = default;
    void certify_flags();

    std::function<double(double)> value_;
    std::function<double(double)> deriv_;
    std::function<double(double)> inverse_;  // empty: generic bisection
    bool convex_ = false;
    bool sqrt_concave_ = false;
    double smooth_from_ = 0.0;
    std::optional<double> table_end_;
    json recipe_;
};

}  // namespace isoperim
