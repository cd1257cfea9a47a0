#pragma once

#include <functional>
#include <optional>

#include "isoperim/potential.hpp"

namespace isoperim {

/// Right end of the dilation-parameter range used for suprema and
/// certification grids.
inline constexpr double kBetaDomainEnd = 1e12;

/// Capacity growth rate T on (0, 1], evaluated at min(x, 1) so callers may
/// feed criteria that exceed the nominal domain.
class RateFunction {
public:
    double operator()(double x) const;
    const json& recipe() const { return recipe_; }
    /// Grid certificate: T non-decreasing and T(x)/x non-increasing on
    /// [1e-10, 1].
    bool certified() const;

    static RateFunction constant(double c);
    /// x^{2(1-1/p)} / p^2, the rate scaling between exponential and Gaussian.
    static RateFunction power_family(double p);
    /// [1 / Phi'(Phi^{-1}(1/x))]^2 for a growing potential.
    static RateFunction from_potential(const Potential& phi);

private:
    RateFunction() = default;
    std::function<double(double)> fn_;
    json recipe_;
};

class FSpec;

/// Dilation-dependent Poincare rate beta on [1, infinity), non-increasing.
class BetaFunction {
public:
    double operator()(double s) const;
    const json& recipe() const { return recipe_; }
    /// Grid certificate: beta non-increasing on [1, 1e12] and s beta(s)
    /// non-decreasing on [2, 1e12].
    bool certified() const;
    /// Smallest s in [1, 1e12] with beta(s) <= y, if any.
    std::optional<double> inverse(double y) const;
    bool essentially_constant() const;

    static BetaFunction constant(double c);
    /// T(1 / log(1+s)) for s >= e-1, frozen at its s = e-1 value below.
    static BetaFunction from_rate(const RateFunction& T);
    static BetaFunction from_potential(const Potential& phi);
    /// scale / (1 + max(F(s), 0)).
    static BetaFunction reciprocal_one_plus_fplus(const FSpec& F, double scale);

private:
    BetaFunction() = default;
    std::function<double(double)> fn_;
    json recipe_;
};

/// Entropy-type functional F on (0, infinity) with F(1) <= 0 and u F(u) -> 0
/// near zero, paired with a candidate Sobolev constant.
class FSpec {
public:
    double operator()(double u) const { return fn_(u); }
    const json& recipe() const { return recipe_; }
    double candidate_constant() const { return c_f_; }
    /// Grid certificate: F non-decreasing on [1e-12, 1e12], F(1) <= 0.
    bool certified() const;
    /// Throws when the functional violates its normalization contract.
    void validate() const;

    static FSpec log_classic(double c_f);
    /// log(1+u)^q - log(2)^q.
    static FSpec shifted_power_log(double q, double c_f);

private:
    FSpec() = default;
    std::function<double(double)> fn_;
    double c_f_ = 0.0;
    json recipe_;
};

}  // namespace isoperim
