// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoperim/capacity.hpp"
#include "isoperim/generator.hpp"
#include "isoperim/grid_measure.hpp"
#include "isoperim/inequality_tests.hpp"
#include "isoperim/line_measure.hpp"
#include "isoperim/product2d.hpp"
#include "isoperim/profile.hpp"
#include "isoperim/rates.hpp"

namespace fs = std::filesystem;
using namespace isoperim;

namespace {

constexpr const char* kCli = ISOPERIM_CLI_PATH;
const fs::path kScratch = "acceptance_scratch";

// Regression pins for criterion 6 (worst super-Poincare ratio per exponent),
// measured on the frozen trial family; 0 disables the pin.
constexpr std::array<double, 3> kSpiExponents{1.0, 1.5, 2.0};
constexpr std::array<double, 3> kSpiWorstPins{3.68148, 2.08192, 1.9971};
constexpr double kSpiPinWindow = 0.05;

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s  [%s]\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

template <typename Body>
void criterion(int number, const std::string& name, Body&& body) {
    try {
        std::pair<bool, std::string> r = body();
        report(number, name, r.first, r.second);
    } catch (const std::exception& e) {
        report(number, name, false, std::string("exception: ") + e.what());
    }
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + kCli + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream os(p);
    os << body;
}

std::string read_text(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    out.back() = hi;
    return out;
}

// --- criterion 1 -----------------------------------------------------------

std::pair<bool, std::string> exponential_profile_exactness() {
    const fs::path dir = kScratch / "c1";
    fs::create_directories(dir);
    write_text(dir / "cfg.json",
               R"({"measure": {"family": "power", "p": 1.0}, "t_min": 1e-6, "points": 500})");
    const int rc = run_cli("profile --config \"" + (dir / "cfg.json").string() + "\" --out \"" +
                           dir.string() + "\"");
    if (rc != 0) return {false, "cli exit " + std::to_string(rc)};

    std::ifstream is(dir / "profile.csv");
    std::string line;
    if (!std::getline(is, line) || line != "t,I,L,ratio") return {false, "bad header"};
    int rows = 0;
    double worst = 0.0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::array<double, 4> v{};
        for (double& x : v) {
            if (!std::getline(ls, cell, ',')) return {false, "short row"};
            x = std::stod(cell);
        }
        worst = std::max(worst, std::abs(v[1] - std::min(v[0], 1.0 - v[0])));
        ++rows;
    }
    const bool ok = rows == 500 && worst <= 1e-6;
    return {ok, "rows " + std::to_string(rows) + ", max |I - min(t,1-t)| " + num(worst)};
}

// --- criterion 2 -----------------------------------------------------------

std::pair<bool, std::string> comparison_curve_bracket() {
    bool ok = true;
    std::string detail;
    for (double p : {1.0, 1.25, 1.5, 2.0}) {
        const LineMeasure m(Potential::power(p, 1.0));
        const ProfileTable tab = asymptotic_ratio_scan(m, {1e-8, 1e-6, 1e-4, 1e-3});
        const double r8 = tab.ratio[0], r6 = tab.ratio[1], r4 = tab.ratio[2], r3 = tab.ratio[3];
        const bool tight = r6 >= 0.75 && r6 <= 1.25;
        const bool sandwich = r3 >= 0.5 && r3 <= 2.0;
        const bool approach = std::abs(r8 - 1.0) <= std::abs(r4 - 1.0) + 1e-9;
        if (!(tight && sandwich && approach)) ok = false;
        detail += "p=" + num(p) + ": r(1e-6)=" + num(r6) + " r(1e-3)=" + num(r3) +
                  (tight && sandwich && approach ? "; " : " VIOLATION; ");
    }
    return {ok, detail};
}

// --- criterion 3 -----------------------------------------------------------

std::pair<bool, std::string> hardy_anchor() {
    const LineMeasure m(Potential::power(1.0, 1.0));
    const HardyConstants h = hardy_constants(m, RateFunction::constant(1.0), 512);
    const BecknerInterval iv = beckner_constant_interval(h);
    const bool ok = !h.divergent && std::abs(h.b_plus - 1.0) <= 1e-6 &&
                    std::abs(h.b_minus - 1.0) <= 1e-6 && std::abs(iv.lower - 1.0 / 6.0) <= 1e-6 &&
                    std::abs(iv.upper - 20.0) <= 2e-5;
    return {ok, "b+ " + num(h.b_plus) + ", b- " + num(h.b_minus) + ", interval [" +
                    num(iv.lower) + ", " + num(iv.upper) + "]"};
}

// --- criterion 4 -----------------------------------------------------------

std::pair<bool, std::string> dual_budget_sup_vs_grid() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const double a = 0.02 + 0.96 * U(rng);
        const double q_total = 0.5 + 2.5 * U(rng);
        const double q_a = q_total * (0.05 + 0.95 * U(rng));
        const double k = q_total * (1.01 + 4.99 * U(rng));
        const double closed = supA_closed_form(q_total, q_a, k, a);

        // Budget is increasing in the plateau height g, so the optimum is the
        // largest feasible g; locate it by nested grid passes.
        const double slack = k - (q_total - q_a);
        auto feasible = [&](double g) {
            return q_a * std::pow(1.0 - g, a / (a - 1.0)) <= slack;
        };
        double lo = 0.0, hi = 1.0 - 1e-16;
        for (int pass = 0; pass < 4; ++pass) {
            const int n = 2000;
            double best = lo;
            const double step = (hi - lo) / n;
            for (int i = n; i >= 0; --i) {
                const double g = lo + step * i;
                if (feasible(g)) {
                    best = g;
                    break;
                }
            }
            lo = best;
            hi = std::min(1.0 - 1e-16, best + step);
        }
        const double grid_val = q_a * lo;
        const double rel = std::abs(closed - grid_val) / std::max(std::abs(closed), 1e-12);
        worst = std::max(worst, rel);
    }
    return {worst <= 1e-6, "worst relative gap " + num(worst) + " over 100 draws"};
}

// --- criterion 5 -----------------------------------------------------------

std::pair<bool, std::string> dilation_sup_bracket() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(std::log(1e-4), std::log(0.49));
    bool ok = true;
    double worst_lo = 1e300, worst_hi = 0.0;
    for (double p : {1.0, 1.5, 2.0}) {
        const BetaFunction beta = BetaFunction::from_rate(RateFunction::power_family(p));
        for (int i = 0; i < 50; ++i) {
            const double a = std::exp(U(rng));
            const double pivot = a / beta(1.0 / a);
            const double sup = capacity_condition_sup(beta, a);
            if (sup < 0.5 * pivot - 1e-9 * pivot || sup > 2.0 * pivot + 1e-9 * pivot) ok = false;
            worst_lo = std::min(worst_lo, sup / pivot);
            worst_hi = std::max(worst_hi, sup / pivot);
        }
    }
    return {ok, "sup/pivot range [" + num(worst_lo) + ", " + num(worst_hi) + "] vs [0.5, 2]"};
}

// --- criterion 6 -----------------------------------------------------------

std::pair<bool, std::string> spi_worst_ratios() {
    bool ok = true;
    std::string detail;
    const TrialFamily family{};  // 500 seeded trials plus the adversarial block
    for (size_t idx = 0; idx < kSpiExponents.size(); ++idx) {
        const double p = kSpiExponents[idx];
        const LineMeasure m(Potential::power(p, 1.0));
        const GridMeasure gm = discretize(m, 2000);
        const BetaFunction beta = BetaFunction::from_potential(m.potential());
        const TrialReport r = super_poincare_test(m, gm, beta, {1, 2, 5, 10, 100, 1000}, family,
                                                  8.0 * 1.05);
        bool this_ok = r.pass() && r.trials == family.count();
        if (kSpiWorstPins[idx] > 0.0) {
            const double pin = kSpiWorstPins[idx];
            if (std::abs(r.worst_ratio - pin) > kSpiPinWindow * pin) this_ok = false;
        }
        if (!this_ok) ok = false;
        detail += "p=" + num(p) + ": worst " + num(r.worst_ratio) +
                  (kSpiWorstPins[idx] > 0.0 ? " (pin " + num(kSpiWorstPins[idx]) + ")" : "") +
                  (this_ok ? "; " : " VIOLATION; ");
    }
    return {ok, detail + "threshold 8.4"};
}

// --- criterion 7 -----------------------------------------------------------

std::pair<bool, std::string> semigroup_identities() {
    const LineMeasure m(Potential::power(1.0, 1.0));
    const GridMeasure gm = discretize(m, 2000);
    const Generator gen = make_generator(m, gm);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.03, 0.97);
    double worst_mass = 0.0, worst_comp = 0.0, worst_l1 = 0.0;
    for (int i = 0; i < 20; ++i) {
        double u1 = U(rng), u2 = U(rng);
        if (u1 > u2) std::swap(u1, u2);
        if (u2 - u1 < 0.05) u2 = std::min(0.97, u1 + 0.05);
        const IntervalSet set{{m.quantile(u1), m.quantile(u2)}};
        const Eigen::ArrayXd f = mollified_indicator(gm, set).f;
        for (double t : {0.01, 0.1, 1.0}) {
            const SemigroupChecks sc = semigroup_checks(gen, f, t);
            worst_mass = std::max(worst_mass, sc.mass_error);
            worst_comp = std::max(worst_comp, sc.composition_error);
            worst_l1 = std::max(worst_l1, sc.l1_excess);
        }
    }
    const bool ok = worst_mass <= 1e-8 && worst_comp <= 1e-8 && worst_l1 <= 1e-10;
    return {ok, "mass " + num(worst_mass) + ", composition " + num(worst_comp) + ", L1 excess " +
                    num(worst_l1)};
}

// --- criterion 8 -----------------------------------------------------------

std::pair<bool, std::string> heat_flow_margins() {
    bool ok = true;
    double worst = 1e300;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    const std::array<Potential, 2> phis{Potential::power(1.0, 1.0),
                                        Potential::power(2.0, std::sqrt(2.0))};
    for (const Potential& phi : phis) {
        const LineMeasure m(phi);
        const GridMeasure gm = discretize(m, 1200);
        const Generator gen = make_generator(m, gm);
        for (int i = 0; i < 20; ++i) {
            IntervalSet set;
            if (i % 3 == 0) {
                set.push_back({-std::numeric_limits<double>::infinity(), m.quantile(U(rng))});
            } else {
                double u1 = U(rng), u2 = U(rng);
                if (u1 > u2) std::swap(u1, u2);
                if (u2 - u1 < 0.05) u2 = std::min(0.96, u1 + 0.05);
                set.push_back({m.quantile(u1), m.quantile(u2)});
            }
            for (double t : {0.01, 0.1}) {
                const double margin = heat_flow_margin(gen, m, set, t);
                worst = std::min(worst, margin);
                if (margin < -1e-3) ok = false;
            }
        }
    }
    return {ok, "worst margin " + num(worst) + " vs -1e-3"};
}

// --- criterion 9 -----------------------------------------------------------

std::pair<bool, std::string> lower_bound_vs_profile() {
    bool ok = true;
    double worst = -1e300;
    for (double p : {1.0, 1.5, 2.0}) {
        const LineMeasure m(Potential::power(p, 1.0));
        const BetaFunction beta = BetaFunction::from_potential(m.potential());
        for (double t : log_grid(1e-4, 0.5, 50)) {
            const IsoLowerBound b = isoperimetric_lower_bound(beta, 0.0, t);
            const double excess = b.value - profile_at(m, t);
            worst = std::max(worst, excess);
            if (excess > 1e-9) ok = false;
        }
    }
    return {ok, "max (bound - profile) " + num(worst)};
}

// --- criterion 10 ----------------------------------------------------------

std::pair<bool, std::string> product_halfplane_optimality() {
    const LineMeasure exp_m(Potential::power(1.0, 1.0));
    double worst_abs = 0.0;
    for (double mass : log_grid(0.01, 0.5, 20)) {
        const double c = solve_parameter_2d(exp_m, Shape::CoordinateHalfPlane, mass, 0.0);
        const double b = boundary_measure_2d(exp_m, Shape::CoordinateHalfPlane, c, 0.0);
        worst_abs = std::max(worst_abs, std::abs(b - profile_at(exp_m, mass)));
    }

    const LineMeasure gauss(Potential::power(2.0, std::sqrt(2.0)));
    const ProductComparison cmp =
        compare_candidates(gauss, {0.1, 0.2, 0.3, 0.5}, std::nullopt, M_PI / 4.0);
    double worst_rel = 0.0;
    for (const MassSummary& s : cmp.summaries)
        worst_rel = std::max(worst_rel, s.halfplane_over_min - 1.0);

    const bool ok = worst_abs <= 1e-6 && worst_rel <= 1e-3;
    return {ok, "coordinate vs 1-D profile " + num(worst_abs) + "; gaussian halfplane/min - 1 " +
                    num(worst_rel)};
}

// --- criterion 11 ----------------------------------------------------------

std::pair<bool, std::string> potential_doubling_properties() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        Potential phi = (i % 2 == 0)
                            ? Potential::power(1.0 + U(rng), 0.5 + 1.5 * U(rng))
                            : Potential::power_log(1.0 + 0.8 * U(rng), U(rng));
        const double x = std::pow(10.0, -3.0 + 4.5 * U(rng));
        const double y = phi(x);
        const bool doubling = phi(2.0 * x) <= 4.0 * phi(x) * (1.0 + 1e-9);
        const bool slope = phi.deriv(x / 2.0) >= 0.5 * phi.deriv(x) * (1.0 - 1e-9);
        const bool inv = !(y > 0.0) ||
                         phi.inverse(y / 2.0) >= 0.5 * phi.inverse(y) * (1.0 - 1e-9);
        if (!(doubling && slope && inv)) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations in 1000 draws"};
}

// --- criterion 12 ----------------------------------------------------------

std::pair<bool, std::string> seeded_determinism() {
    const fs::path dir = kScratch / "c12";
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");

    write_text(dir / "spi.json",
               R"({"measure": {"family": "power", "p": 1.0}, "grid": {"points": 600},
                   "family": {"seed": 3, "bumps": 25, "ramps": 25, "polynomials": 12},
                   "s_set": [1, 4, 100]})");
    write_text(dir / "beckner.json",
               R"({"measure": {"family": "power", "p": 2.0, "scale": 1.4142135623730951},
                   "grid": {"points": 600},
                   "family": {"seed": 3, "bumps": 20, "ramps": 20, "polynomials": 10},
                   "p_set": [1.25, 1.75]})");
    write_text(dir / "fsobolev.json",
               R"({"measure": {"family": "power", "p": 2.0, "scale": 1.4142135623730951},
                   "grid": {"points": 600},
                   "family": {"seed": 3, "bumps": 20, "ramps": 20, "polynomials": 10},
                   "f": {"kind": "log", "c_f": 2.2}})");
    write_text(dir / "semigroup.json",
               R"({"measure": {"family": "power", "p": 1.0}, "grid": {"points": 600},
                   "family": {"seed": 3, "bumps": 10, "ramps": 10, "polynomials": 5},
                   "times": [0.01, 0.1], "s_set": [1, 4],
                   "interval_sets": [[[-0.5, 1.0]], [["-inf", 0.2]]]})");

    const std::array<std::pair<std::string, std::string>, 4> jobs{
        std::pair<std::string, std::string>{"verify-spi", "spi.json"},
        {"verify-beckner", "beckner.json"},
        {"verify-fsobolev", "fsobolev.json"},
        {"semigroup", "semigroup.json"}};
    for (const auto& [cmd, cfg] : jobs) {
        for (const char* sub : {"a", "b"}) {
            const int rc = run_cli(cmd + " --config \"" + (dir / cfg).string() + "\" --out \"" +
                                   (dir / sub).string() + "\" --seed 9");
            if (rc != 0) return {false, cmd + " exit " + std::to_string(rc)};
        }
        const std::string one = read_text(dir / "a" / cfg);
        const std::string two = read_text(dir / "b" / cfg);
        if (one.empty() || one != two) return {false, cfg + " differs between seeded runs"};
    }
    return {true, "4 reports byte-identical across seeded reruns"};
}

}  // namespace

int main() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);

    criterion(1, "exponential profile exactness", exponential_profile_exactness);
    criterion(2, "profile comparison-curve bracket and asymptotics", comparison_curve_bracket);
    criterion(3, "constant-rate hardy anchor", hardy_anchor);
    criterion(4, "dual-budget supremum closed form vs grid", dual_budget_sup_vs_grid);
    criterion(5, "dilation supremum two-sided bracket", dilation_sup_bracket);
    criterion(6, "super-poincare worst trial ratios", spi_worst_ratios);
    criterion(7, "semigroup mass, contraction, composition identities", semigroup_identities);
    criterion(8, "heat-flow boundary lower-bound margins", heat_flow_margins);
    criterion(9, "decay-rate isoperimetric lower bound vs profile", lower_bound_vs_profile);
    criterion(10, "product coordinate half-plane optimality", product_halfplane_optimality);
    criterion(11, "potential doubling properties", potential_doubling_properties);
    criterion(12, "seeded determinism of verification reports", seeded_determinism);

    std::printf("acceptance: %d/12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
