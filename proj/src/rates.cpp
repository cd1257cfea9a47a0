#include "isoperim/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "isoperim/roots.hpp"

namespace isoperim {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = lo * std::pow(hi / lo, double(k) / (n - 1));
    return g;
}

}  // namespace

double RateFunction::operator()(double x) const {
    if (!(x > 0.0)) throw std::domain_error("rate function: needs x > 0");
    return fn_(std::min(x, 1.0));
}

bool RateFunction::certified() const {
    const auto grid = log_grid(1e-10, 1.0, 1000);
    double prev = 0.0, prev_over = std::numeric_limits<double>::infinity();
    for (double x : grid) {
        const double v = fn_(x);
        if (!(v > 0.0) || !std::isfinite(v)) return false;
        if (v < prev * (1.0 - 1e-9)) return false;
        const double over = v / x;
        if (over > prev_over * (1.0 + 1e-9)) return false;
        prev = std::max(prev, v);
        prev_over = std::min(prev_over, over);
    }
    return true;
}

RateFunction RateFunction::constant(double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("rate function: constant must be nonnegative");
    RateFunction T;
    T.fn_ = [c](double) { return c; };
    T.recipe_ = json{{"kind", "constant"}, {"value", c}};
    return T;
}

RateFunction RateFunction::power_family(double p) {
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("rate function: power family needs p in [1,2]");
    RateFunction T;
    const double e = 2.0 * (1.0 - 1.0 / p);
    T.fn_ = [e, p](double x) { return std::pow(x, e) / (p * p); };
    T.recipe_ = json{{"kind", "power-family"}, {"p", p}};
    return T;
}

RateFunction RateFunction::from_potential(const Potential& phi) {
    if (phi(0.0) > 1.0)
        throw std::invalid_argument("rate function: potential must satisfy phi(0) <= 1");
    if (phi.deriv(phi.inverse(1.0)) == 0.0)
        throw std::domain_error("rate function: potential slope vanishes where phi = 1, rate degenerates");
    RateFunction T;
    T.fn_ = [phi](double x) {
        const double d = phi.deriv(phi.inverse(1.0 / x));
        return 1.0 / (d * d);
    };
    T.recipe_ = json{{"kind", "from-potential"}, {"potential", phi.recipe()}};
    return T;
}

double BetaFunction::operator()(double s) const {
    if (!(s >= 1.0)) throw std::domain_error("beta function: needs s >= 1");
    return fn_(s);
}

bool BetaFunction::certified() const {
    double prev = std::numeric_limits<double>::infinity();
    for (double s : log_grid(1.0, kBetaDomainEnd, 1000)) {
        const double v = fn_(s);
        if (!(v > 0.0) || !std::isfinite(v)) return false;
        if (v > prev * (1.0 + 1e-9)) return false;
        prev = std::min(prev, v);
    }
    double prev_sb = 0.0;
    for (double s : log_grid(2.0, kBetaDomainEnd, 1000)) {
        const double sb = s * fn_(s);
        if (sb < prev_sb * (1.0 - 1e-9)) return false;
        prev_sb = std::max(prev_sb, sb);
    }
    return true;
}

std::optional<double> BetaFunction::inverse(double y) const {
    if (fn_(1.0) <= y) return 1.0;
    if (fn_(kBetaDomainEnd) > y) return std::nullopt;
    const double u = roots::bisect([this](double t) { return -fn_(std::exp(t)); }, 0.0,
                                   std::log(kBetaDomainEnd), -y);
    return std::exp(u);
}

bool BetaFunction::essentially_constant() const {
    return fn_(kBetaDomainEnd) > (1.0 - 1e-9) * fn_(1.0);
}

BetaFunction BetaFunction::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("beta function: constant must be positive");
    BetaFunction b;
    b.fn_ = [c](double) { return c; };
    b.recipe_ = json{{"kind", "constant"}, {"value", c}};
    return b;
}

BetaFunction BetaFunction::from_rate(const RateFunction& T) {
    if (!T.certified())
        throw std::invalid_argument("beta function: rate certificates fail, cannot build beta");
    BetaFunction b;
    const double knee = std::exp(1.0) - 1.0;
    b.fn_ = [T, knee](double s) {
        if (s < knee) return T(1.0);
        return T(1.0 / std::log1p(s));
    };
    b.recipe_ = json{{"kind", "from-rate"}, {"rate", T.recipe()}};
    return b;
}

BetaFunction BetaFunction::from_potential(const Potential& phi) {
    BetaFunction b = from_rate(RateFunction::from_potential(phi));
    b.recipe_ = json{{"kind", "from-potential"}, {"potential", phi.recipe()}};
    return b;
}

BetaFunction BetaFunction::reciprocal_one_plus_fplus(const FSpec& F, double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("beta function: scale must be positive");
    BetaFunction b;
    b.fn_ = [F, scale](double s) { return scale / (1.0 + std::max(F(s), 0.0)); };
    b.recipe_ = json{{"kind", "reciprocal-one-plus-fplus"}, {"f", F.recipe()}, {"scale", scale}};
    return b;
}

void FSpec::validate() const {
    if (!(c_f_ > 0.0))
        throw std::invalid_argument("entropy functional: candidate constant must be positive");
    if (fn_(1.0) > 1e-12)
        throw std::invalid_argument("entropy functional: F(1) must be <= 0");
    if (std::abs(1e-30 * fn_(1e-30)) > 1e-20)
        throw std::invalid_argument("entropy functional: u F(u) must vanish near zero");
}

bool FSpec::certified() const {
    if (fn_(1.0) > 1e-12) return false;
    double prev = -std::numeric_limits<double>::infinity();
    for (double u : log_grid(1e-12, 1e12, 1000)) {
        const double v = fn_(u);
        if (v < prev - 1e-12 - 1e-9 * std::abs(prev)) return false;
        prev = std::max(prev, v);
    }
    return true;
}

FSpec FSpec::log_classic(double c_f) {
    FSpec F;
    F.fn_ = [](double u) { return std::log(u); };
    F.c_f_ = c_f;
    F.recipe_ = json{{"kind", "log"}, {"c_f", c_f}};
    F.validate();
    return F;
}

FSpec FSpec::shifted_power_log(double q, double c_f) {
    if (!(q > 0.0 && q <= 2.0))
        throw std::invalid_argument("entropy functional: power must lie in (0,2]");
    FSpec F;
    const double offset = std::pow(std::log(2.0), q);
    F.fn_ = [q, offset](double u) { return std::pow(std::log1p(u), q) - offset; };
    F.c_f_ = c_f;
    F.recipe_ = json{{"kind", "shifted-power-log"}, {"q", q}, {"c_f", c_f}};
    F.validate();
    return F;
}

}  // namespace isoperim
