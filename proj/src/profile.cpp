#include "isoperim/profile.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "isoperim/util.hpp"

namespace isoperim {

double profile_at(const LineMeasure& m, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("profile_at: needs t in [0,1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    if (!m.log_concave())
        throw std::invalid_argument(
            "profile_at: half-line minimality is only certified for log-concave measures");
    return m.density(m.quantile(t));
}

double comparison_profile(const Potential& phi, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("comparison_profile: needs t in [0,1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    if (phi(0.0) >= std::log(2.0))
        throw std::domain_error("comparison_profile: needs phi(0) < log 2");
    const double u = std::min(t, 1.0 - t);
    return u * phi.deriv(phi.inverse(std::log(1.0 / u)));
}

namespace {

ProfileTable scan(const LineMeasure& m, const std::vector<double>& ts) {
    ProfileTable tab;
    const int n = static_cast<int>(ts.size());
    tab.t = ts;
    tab.iso.resize(n);
    tab.comparison.resize(n);
    tab.ratio.resize(n);
    parallel_for(n, [&](int k) {
        tab.iso[k] = profile_at(m, tab.t[k]);
        tab.comparison[k] = comparison_profile(m.potential(), tab.t[k]);
        tab.ratio[k] = tab.iso[k] / tab.comparison[k];
    });
    tab.ratio_min = tab.ratio[0];
    tab.ratio_max = tab.ratio[0];
    for (double r : tab.ratio) {
        tab.ratio_min = std::min(tab.ratio_min, r);
        tab.ratio_max = std::max(tab.ratio_max, r);
    }
    return tab;
}

}  // namespace

ProfileTable profile_table(const LineMeasure& m, double t_min, int points) {
    if (!(t_min > 0.0 && t_min < 0.5)) throw std::invalid_argument("profile_table: t_min must lie in (0, 1/2)");
    if (points < 2) throw std::invalid_argument("profile_table: needs at least two points");
    std::vector<double> ts(points);
    for (int k = 0; k < points; ++k)
        ts[k] = t_min * std::pow(0.5 / t_min, double(k) / (points - 1));
    return scan(m, ts);
}

ProfileTable asymptotic_ratio_scan(const LineMeasure& m, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("asymptotic_ratio_scan: empty grid");
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 0.5))
            throw std::domain_error("asymptotic_ratio_scan: grid points must lie in (0, 1/2]");
    return scan(m, t_grid);
}

void ProfileTable::write_csv(std::ostream& os) const {
    os << "t,I,L,ratio\n";
    for (size_t k = 0; k < t.size(); ++k)
        os << fmt_double(t[k]) << ',' << fmt_double(iso[k]) << ',' << fmt_double(comparison[k])
           << ',' << fmt_double(ratio[k]) << '\n';
}

double domination_constant(const LineMeasure& m1, const LineMeasure& m2,
                           const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("domination_constant: empty grid");
    double c = std::numeric_limits<double>::infinity();
    for (double t : t_grid) c = std::min(c, profile_at(m1, t) / profile_at(m2, t));
    return c;
}

}  // namespace isoperim
