#include "isoperim/product2d.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "isoperim/profile.hpp"
#include "isoperim/quadrature.hpp"
#include "isoperim/roots.hpp"
#include "isoperim/util.hpp"

namespace isoperim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAngleFloor = 1e-12;

quad::Options mass_opts() {
    quad::Options o;
    o.abs_tol = 1e-300;
    o.rel_tol = 1e-11;
    o.max_intervals = 4096;
    return o;
}

void check_angle(double angle) {
    if (!(angle >= 0.0 && angle <= kPi / 2.0))
        throw std::domain_error("product candidates: angle must lie in [0, pi/2]");
}

double rotated_mass(const LineMeasure& m, double c, double angle) {
    const double x_max = m.truncation();
    const double sn = std::sin(angle);
    const double cs = std::cos(angle);
    const auto integrand = [&](double x) {
        return m.density(x) * m.cdf((c - x * cs) / sn);
    };
    return quad::integrate(integrand, {-x_max, 0.0, x_max}, mass_opts()).value;
}

double rotated_boundary(const LineMeasure& m, double c, double angle) {
    const double x_max = m.truncation();
    const double sn = std::sin(angle);
    const double cs = std::cos(angle);
    const double u_max = 2.5 * x_max;
    const auto integrand = [&](double u) {
        const double x = c * cs - u * sn;
        const double y = c * sn + u * cs;
        return m.density(x) * m.density(y);
    };
    return quad::integrate(integrand, {-u_max, 0.0, u_max}, mass_opts()).value;
}

double ball_mass(const LineMeasure& m, double r) {
    if (r == 0.0) return 0.0;
    const auto integrand = [&](double phi) {
        const double x = r * std::sin(phi);
        const double half_chord = r * std::cos(phi);
        return m.density(x) * (m.cdf(half_chord) - m.cdf(-half_chord)) * half_chord;
    };
    return quad::integrate(integrand, {-kPi / 2.0, 0.0, kPi / 2.0}, mass_opts()).value;
}

double ball_boundary(const LineMeasure& m, double r) {
    if (r == 0.0) return 0.0;
    const auto integrand = [&](double phi) {
        return m.density(r * std::cos(phi)) * m.density(r * std::sin(phi)) * r;
    };
    return quad::integrate(integrand,
                           {0.0, kPi / 2.0, kPi, 1.5 * kPi, 2.0 * kPi}, mass_opts())
        .value;
}

}  // namespace

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::CoordinateHalfPlane: return "coordinate-halfplane";
        case Shape::RotatedHalfPlane: return "rotated-halfplane";
        case Shape::Ball: return "ball";
        case Shape::Square: return "square";
    }
    throw std::logic_error("unknown shape");
}

double set_measure_2d(const LineMeasure& m, Shape shape, double param, double angle) {
    switch (shape) {
        case Shape::CoordinateHalfPlane:
            return m.cdf(param);
        case Shape::RotatedHalfPlane:
            check_angle(angle);
            if (std::abs(std::sin(angle)) < kAngleFloor) return m.cdf(param);
            return rotated_mass(m, param, angle);
        case Shape::Ball:
            if (param < 0.0) throw std::domain_error("ball radius must be nonnegative");
            return ball_mass(m, param);
        case Shape::Square: {
            if (!(param > 0.0)) throw std::domain_error("square half-side must be positive");
            const double side = 1.0 - 2.0 * m.upper_tail(param);
            return side * side;
        }
    }
    throw std::logic_error("unknown shape");
}

double boundary_measure_2d(const LineMeasure& m, Shape shape, double param, double angle) {
    switch (shape) {
        case Shape::CoordinateHalfPlane:
            return m.density(param);
        case Shape::RotatedHalfPlane:
            check_angle(angle);
            if (std::abs(std::sin(angle)) < kAngleFloor) return m.density(param);
            return rotated_boundary(m, param, angle);
        case Shape::Ball:
            if (param < 0.0) throw std::domain_error("ball radius must be nonnegative");
            return ball_boundary(m, param);
        case Shape::Square: {
            if (!(param > 0.0)) throw std::domain_error("square half-side must be positive");
            return 4.0 * m.density(param) * (1.0 - 2.0 * m.upper_tail(param));
        }
    }
    throw std::logic_error("unknown shape");
}

double solve_parameter_2d(const LineMeasure& m, Shape shape, double mass, double angle) {
    if (!(mass > 0.0 && mass <= 0.5))
        throw std::domain_error("product candidates: mass must lie in (0, 1/2]");
    const double x_max = m.truncation();
    switch (shape) {
        case Shape::CoordinateHalfPlane:
            return m.quantile(mass);
        case Shape::RotatedHalfPlane: {
            check_angle(angle);
            if (std::abs(std::sin(angle)) < kAngleFloor) return m.quantile(mass);
            const auto f = [&](double c) { return rotated_mass(m, c, angle); };
            return roots::bisect(f, -2.0 * x_max, 2.0 * x_max, mass, 1e-13, 200);
        }
        case Shape::Ball: {
            const auto f = [&](double r) { return ball_mass(m, r); };
            return roots::bisect(f, 0.0, 2.0 * x_max, mass, 1e-13, 200);
        }
        case Shape::Square:
            return m.quantile(1.0 - 0.5 * (1.0 - std::sqrt(mass)));
    }
    throw std::logic_error("unknown shape");
}

bool ProductComparison::pass() const {
    for (const auto& s : summaries)
        if (!s.k_pass) return false;
    return true;
}

json ProductComparison::to_json() const {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json row;
        row["shape"] = shape_name(r.shape);
        row["parameter"] = r.parameter;
        row["angle"] = r.angle;
        row["mass"] = r.mass;
        row["boundary"] = r.boundary;
        row["ratio_to_halfplane"] = r.ratio_to_halfplane;
        row["reached"] = r.reached;
        row["note"] = r.note;
        j["rows"].push_back(row);
    }
    j["summaries"] = json::array();
    for (const auto& s : summaries) {
        json row;
        row["mass"] = s.mass;
        row["halfplane_boundary"] = s.halfplane_boundary;
        row["min_boundary"] = s.min_boundary;
        row["min_shape"] = shape_name(s.min_shape);
        row["halfplane_over_min"] = s.halfplane_over_min;
        row["comparison_curve"] = s.comparison_curve;
        row["min_over_curve"] = s.min_over_curve;
        row["k_pass"] = s.k_pass;
        j["summaries"].push_back(row);
    }
    j["k_empirical"] = k_empirical;
    j["k_profile"] = k_profile;
    if (k_claimed)
        j["k_claimed"] = *k_claimed;
    else
        j["k_claimed"] = nullptr;
    j["verdict"] = pass() ? "pass" : "fail";
    return j;
}

void ProductComparison::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("could not open " + path);
    out << "shape,parameter,mass,boundary,ratio_to_halfplane\n";
    for (const auto& r : rows)
        out << shape_name(r.shape) << ',' << fmt_double(r.parameter) << ',' << fmt_double(r.mass)
            << ',' << fmt_double(r.boundary) << ',' << fmt_double(r.ratio_to_halfplane) << '\n';
}

ProductComparison compare_candidates(const LineMeasure& m, const std::vector<double>& masses,
                                     std::optional<double> k_claimed, double angle) {
    if (masses.empty()) throw std::invalid_argument("compare_candidates: empty mass list");
    for (double t : masses)
        if (!(t > 0.0 && t <= 0.5))
            throw std::domain_error("compare_candidates: masses must lie in (0, 1/2]");
    if (k_claimed && !(*k_claimed > 0.0))
        throw std::invalid_argument("compare_candidates: claimed constant must be positive");
    check_angle(angle);

    const Shape shapes[4] = {Shape::CoordinateHalfPlane, Shape::RotatedHalfPlane, Shape::Ball,
                             Shape::Square};
    ProductComparison out;
    out.k_claimed = k_claimed;
    for (double target : masses) {
        MassSummary summary;
        summary.mass = target;
        double halfplane = 0.0;
        double min_boundary = 0.0;
        Shape min_shape = Shape::CoordinateHalfPlane;
        bool have_min = false;
        std::vector<CandidateRow> batch;
        for (Shape shape : shapes) {
            CandidateRow row;
            row.shape = shape;
            row.angle = shape == Shape::RotatedHalfPlane ? angle : 0.0;
            try {
                row.parameter = solve_parameter_2d(m, shape, target, angle);
                row.mass = set_measure_2d(m, shape, row.parameter, angle);
                row.boundary = boundary_measure_2d(m, shape, row.parameter, angle);
                row.reached = std::abs(row.mass - target) <= 1e-9;
                if (!row.reached) row.note = "mass tolerance 1e-9 not met";
            } catch (const std::exception& e) {
                row.reached = false;
                row.note = e.what();
            }
            if (shape == Shape::CoordinateHalfPlane) halfplane = row.boundary;
            if (row.reached && (!have_min || row.boundary < min_boundary)) {
                min_boundary = row.boundary;
                min_shape = shape;
                have_min = true;
            }
            batch.push_back(row);
        }
        for (auto& row : batch) {
            row.ratio_to_halfplane = halfplane > 0.0 ? row.boundary / halfplane : 0.0;
            out.rows.push_back(row);
        }
        summary.halfplane_boundary = halfplane;
        summary.min_boundary = min_boundary;
        summary.min_shape = min_shape;
        summary.halfplane_over_min = min_boundary > 0.0 ? halfplane / min_boundary : 1.0;
        summary.comparison_curve = comparison_profile(m.potential(), target);
        summary.min_over_curve =
            summary.comparison_curve > 0.0 ? min_boundary / summary.comparison_curve : 0.0;
        summary.k_pass =
            !k_claimed || summary.min_over_curve >= *k_claimed * (1.0 - 1e-9);
        out.summaries.push_back(summary);
        out.k_empirical = std::max(out.k_empirical, summary.halfplane_over_min);
        out.k_profile = out.summaries.size() == 1
                            ? summary.min_over_curve
                            : std::min(out.k_profile, summary.min_over_curve);
    }
    return out;
}

}  // namespace isoperim
