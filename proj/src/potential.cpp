#include "isoperim/potential.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "isoperim/roots.hpp"

namespace isoperim {

namespace {

double checked_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::invalid_argument(std::string("measure recipe: field \"") + field + "\" must be a number");
    return j[field].get<double>();
}

}  // namespace

double Potential::inverse(double y) const {
    const double p0 = value_(0.0);
    if (!(y >= p0)) throw std::domain_error("Potential::inverse: argument below Phi(0)");
    if (inverse_) return inverse_(y);
    if (y == p0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (value_(hi) < y && guard++ < 2000) hi *= 2.0;
    if (value_(hi) < y) throw std::domain_error("Potential::inverse: value not attained");
    return roots::bisect([&](double x) { return value_(x); }, 0.0, hi, y);
}

void Potential::certify_flags() {
    // Finite-difference certificates on a graded grid: Phi slopes must be
    // non-decreasing (convexity) and sqrt(Phi) slopes non-increasing beyond
    // smooth_from (concavity in the large when Phi is only eventually smooth).
    double hi = 1.0;
    int guard = 0;
    const double p0 = value_(0.0);
    while (value_(hi) < p0 + 80.0 && guard++ < 200) hi *= 2.0;

    const int n = 1024;
    std::vector<double> xs;
    xs.reserve(n + 1);
    xs.push_back(0.0);
    const double lo = hi * 1e-7;
    for (int k = 0; k < n; ++k) xs.push_back(lo * std::pow(hi / lo, double(k) / (n - 1)));

    bool conv = true;
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
        const double s = (value_(xs[k + 1]) - value_(xs[k])) / (xs[k + 1] - xs[k]);
        if (s < prev_slope * (1.0 - 1e-9) - 1e-12) { conv = false; break; }
        prev_slope = std::max(prev_slope, s);
    }
    convex_ = conv;

    bool sq = true;
    prev_slope = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k + 1 < xs.size(); ++k) {
        if (xs[k] < smooth_from_) continue;
        const double v0 = value_(xs[k]);
        const double v1 = value_(xs[k + 1]);
        if (v0 < 0.0 || v1 < 0.0) { sq = false; break; }
        const double s = (std::sqrt(v1) - std::sqrt(v0)) / (xs[k + 1] - xs[k]);
        if (s > prev_slope * (1.0 + 1e-9) + 1e-12) { sq = false; break; }
        prev_slope = std::min(prev_slope, s);
    }
    sqrt_concave_ = sq;
}

Potential Potential::power(double p, double scale) {
    if (!(p > 0.0)) throw std::invalid_argument("power potential: field \"p\" must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("power potential: field \"scale\" must be positive");
    Potential P;
    P.value_ = [p, scale](double x) { return std::pow(x / scale, p); };
    P.deriv_ = [p, scale](double x) {
        if (x == 0.0) {
            if (p > 1.0) return 0.0;
            if (p == 1.0) return 1.0 / scale;
            return std::numeric_limits<double>::infinity();
        }
        return (p / scale) * std::pow(x / scale, p - 1.0);
    };
    P.inverse_ = [p, scale](double y) { return scale * std::pow(y, 1.0 / p); };
    P.convex_ = p >= 1.0;
    P.sqrt_concave_ = p <= 2.0;
    P.smooth_from_ = 0.0;
    P.recipe_ = json{{"family", "power"}, {"p", p}};
    if (scale != 1.0) P.recipe_["scale"] = scale;
    return P;
}

Potential Potential::power_log(double p, double alpha, std::optional<double> gamma) {
    if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("power-log potential: field \"p\" must lie in (0,2]");
    if (!(alpha >= 0.0)) throw std::invalid_argument("power-log potential: field \"alpha\" must be nonnegative");
    double g;
    if (gamma) {
        g = *gamma;
        if (!(g >= 1.0)) throw std::invalid_argument("power-log potential: field \"gamma\" must be >= 1");
    } else {
        if (p >= 2.0 && alpha != 0.0)
            throw std::invalid_argument("power-log potential: gamma \"auto\" needs p < 2");
        g = (alpha == 0.0) ? 1.0 : std::exp(alpha / (2.0 - p));
    }
    Potential P;
    P.value_ = [p, alpha, g](double x) {
        if (x == 0.0) return 0.0;
        return std::pow(x, p) * std::pow(std::log(g + x), alpha);
    };
    P.deriv_ = [p, alpha, g](double x) {
        if (x == 0.0) {
            if (p > 1.0) return 0.0;
            if (p == 1.0) return std::pow(std::log(g), alpha);
            return std::numeric_limits<double>::infinity();
        }
        const double L = std::log(g + x);
        return std::pow(x, p - 1.0) * std::pow(L, alpha - 1.0) * (p * L + alpha * x / (g + x));
    };
    P.smooth_from_ = 0.0;
    P.recipe_ = json{{"family", "power-log"}, {"p", p}, {"alpha", alpha}};
    P.recipe_["gamma"] = gamma ? json(g) : json("auto");
    P.certify_flags();
    return P;
}

Potential Potential::nonconvex_example(double alpha, double eps) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("non-convex example potential: field \"alpha\" must lie in (1,2)");
    if (!(eps > 0.0 && eps <= 2.0))
        throw std::invalid_argument("non-convex example potential: field \"eps\" must lie in (0,2]");

    auto base = [alpha](double x) {
        const double s = std::sin(x);
        return std::pow(x, alpha) + std::log1p(x * s * s);
    };
    auto base_d = [alpha](double x) {
        const double s = std::sin(x);
        const double w = 1.0 + x * s * s;
        return alpha * std::pow(x, alpha - 1.0) + (s * s + x * std::sin(2.0 * x)) / w;
    };
    auto base_dd = [alpha](double x) {
        const double s = std::sin(x);
        const double w = 1.0 + x * s * s;
        const double num = s * s + x * std::sin(2.0 * x);  // = w'
        const double num_d = 2.0 * std::sin(2.0 * x) + 2.0 * x * std::cos(2.0 * x);
        return alpha * (alpha - 1.0) * std::pow(x, alpha - 2.0) + (num_d * w - num * num) / (w * w);
    };

    // Even C^2 core on [0, eps): c0 + c2 x^2 + c4 x^4 matched at eps.
    const double A = base(eps), B = base_d(eps), C = base_dd(eps);
    const double c4 = (C - B / eps) / (8.0 * eps * eps);
    const double c2 = B / (2.0 * eps) - 2.0 * c4 * eps * eps;
    const double c0 = A - c2 * eps * eps - c4 * eps * eps * eps * eps;
    if (!(c0 >= 0.0))
        throw std::invalid_argument("non-convex example potential: core extension dips below zero; adjust eps");

    Potential P;
    P.value_ = [=](double x) {
        if (x < eps) return c0 + x * x * (c2 + c4 * x * x);
        return base(x);
    };
    P.deriv_ = [=](double x) {
        if (x < eps) return x * (2.0 * c2 + 4.0 * c4 * x * x);
        return base_d(x);
    };
    P.convex_ = false;
    P.sqrt_concave_ = false;
    P.smooth_from_ = eps;
    P.recipe_ = json{{"family", "nonconvex-example"}, {"alpha", alpha}, {"eps", eps}};

    // The published formula is only monotone for alpha away from 1; enforce the
    // Potential contract up front instead of failing deep inside a quadrature.
    double hi = eps;
    int guard = 0;
    while (P.value_(hi) < 90.0 && guard++ < 200) hi *= 1.5;
    const int n = 4096;
    for (int k = 0; k <= n; ++k) {
        const double x = hi * double(k) / n;
        if (P.deriv_(x) < 0.0)
            throw std::invalid_argument("non-convex example potential: non-monotone for this alpha; use alpha closer to 2");
    }
    return P;
}

Potential Potential::tabulated(std::vector<double> xs, std::vector<double> phis) {
    if (xs.size() != phis.size() || xs.size() < 4)
        throw std::invalid_argument("tabulated potential: fields \"x\" and \"phi\" must have equal length >= 4");
    if (xs.front() != 0.0)
        throw std::invalid_argument("tabulated potential: field \"x\" must start at 0");
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1]))
            throw std::invalid_argument("tabulated potential: field \"x\" must be strictly increasing");
        if (phis[i + 1] < phis[i])
            throw std::invalid_argument("tabulated potential: field \"phi\" must be non-decreasing");
    }
    if (!(phis.front() >= 0.0))
        throw std::invalid_argument("tabulated potential: field \"phi\" must be nonnegative");

    auto xsp = std::make_shared<std::vector<double>>(std::move(xs));
    auto psp = std::make_shared<std::vector<double>>(std::move(phis));
    auto locate = [](const std::vector<double>& v, double x) {
        size_t lo = 0, hi = v.size() - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (v[mid] <= x) lo = mid; else hi = mid;
        }
        return lo;
    };

    Potential P;
    P.value_ = [xsp, psp, locate](double x) {
        const auto& xv = *xsp;
        const auto& pv = *psp;
        if (x >= xv.back()) {  // continue with the final slope
            const size_t k = xv.size() - 2;
            const double s = (pv[k + 1] - pv[k]) / (xv[k + 1] - xv[k]);
            return pv.back() + s * (x - xv.back());
        }
        const size_t k = locate(xv, x);
        const double s = (pv[k + 1] - pv[k]) / (xv[k + 1] - xv[k]);
        return pv[k] + s * (x - xv[k]);
    };
    P.deriv_ = [xsp, psp, locate](double x) {
        const auto& xv = *xsp;
        const auto& pv = *psp;
        const size_t k = (x >= xv.back()) ? xv.size() - 2 : locate(xv, x);
        return (pv[k + 1] - pv[k]) / (xv[k + 1] - xv[k]);
    };
    P.smooth_from_ = 0.0;
    P.table_end_ = xsp->back();
    P.recipe_ = json{{"family", "table"}, {"x", *xsp}, {"phi", *psp}};
    P.certify_flags();
    return P;
}

Potential Potential::from_recipe(const json& recipe) {
    if (!recipe.is_object() || !recipe.contains("family") || !recipe["family"].is_string())
        throw std::invalid_argument("measure recipe: field \"family\" must be a string");
    const std::string fam = recipe["family"].get<std::string>();
    if (fam == "power") {
        double scale = 1.0;
        if (recipe.contains("scale")) scale = checked_number(recipe, "scale");
        return power(checked_number(recipe, "p"), scale);
    }
    if (fam == "power-log") {
        std::optional<double> gamma;
        if (recipe.contains("gamma") && !(recipe["gamma"].is_string() && recipe["gamma"] == "auto"))
            gamma = checked_number(recipe, "gamma");
        return power_log(checked_number(recipe, "p"), checked_number(recipe, "alpha"), gamma);
    }
    if (fam == "nonconvex-example") {
        double eps = 0.5;
        if (recipe.contains("eps")) eps = checked_number(recipe, "eps");
        return nonconvex_example(checked_number(recipe, "alpha"), eps);
    }
    if (fam == "table") {
        if (!recipe.contains("x") || !recipe.contains("phi") || !recipe["x"].is_array() || !recipe["phi"].is_array())
            throw std::invalid_argument("measure recipe: table family needs array fields \"x\" and \"phi\"");
        return tabulated(recipe["x"].get<std::vector<double>>(), recipe["phi"].get<std::vector<double>>());
    }
    throw std::invalid_argument(
        "measure recipe: unknown family \"" + fam +
        "\" (expected power | power-log | nonconvex-example | table)");
}

}  // namespace isoperim
