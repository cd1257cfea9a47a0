#include "isoperim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace isoperim {

namespace {

const json& require_object(const json& j, const std::string& field) {
    if (!j.contains(field))
        throw std::invalid_argument("config: missing \"" + field + "\" object");
    const json& v = j.at(field);
    if (!v.is_object())
        throw std::invalid_argument("config: \"" + field + "\" must be an object");
    return v;
}

double get_number(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    const json& v = j.at(field);
    if (!v.is_number())
        throw std::invalid_argument("config: \"" + field + "\" must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    const json& v = j.at(field);
    if (!v.is_number_integer())
        throw std::invalid_argument("config: \"" + field + "\" must be an integer");
    return v.get<int>();
}

std::string require_string(const json& j, const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw std::invalid_argument("config: missing string field \"" + field + "\"");
    return j.at(field).get<std::string>();
}

double interval_endpoint(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("config: \"" + field +
                                "\" endpoints must be numbers or \"inf\"/\"-inf\"");
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(source + ": " + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: could not open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

LineMeasure measure_from_config(const json& cfg) {
    const json& mj = require_object(cfg, "measure");
    MeasureOptions opts;
    opts.truncation_scale = get_number(mj, "truncation_scale", 1.0);
    opts.table_size = get_int(mj, "table_size", 2048);
    return LineMeasure(Potential::from_recipe(mj), opts);
}

RateFunction rate_from_config(const json& rate_cfg, const Potential* measure_potential) {
    if (!rate_cfg.is_object())
        throw std::invalid_argument("config: \"rate\" must be an object");
    const std::string kind = require_string(rate_cfg, "kind");
    if (kind == "constant") return RateFunction::constant(get_number(rate_cfg, "value", 1.0));
    if (kind == "power-family") {
        if (!rate_cfg.contains("p"))
            throw std::invalid_argument("config: rate power-family needs \"p\"");
        return RateFunction::power_family(rate_cfg.at("p").get<double>());
    }
    if (kind == "from-measure") {
        if (!measure_potential)
            throw std::invalid_argument("config: rate from-measure needs a measure");
        return RateFunction::from_potential(*measure_potential);
    }
    if (kind == "from-potential")
        return RateFunction::from_potential(
            Potential::from_recipe(require_object(rate_cfg, "potential")));
    throw std::invalid_argument("config: unknown rate kind \"" + kind + "\"");
}

BetaFunction beta_from_config(const json& beta_cfg, const Potential* measure_potential) {
    if (!beta_cfg.is_object())
        throw std::invalid_argument("config: \"beta\" must be an object");
    const std::string kind = require_string(beta_cfg, "kind");
    if (kind == "constant") return BetaFunction::constant(get_number(beta_cfg, "value", 1.0));
    if (kind == "from-rate")
        return BetaFunction::from_rate(
            rate_from_config(require_object(beta_cfg, "rate"), measure_potential));
    if (kind == "from-measure") {
        if (!measure_potential)
            throw std::invalid_argument("config: beta from-measure needs a measure");
        return BetaFunction::from_potential(*measure_potential);
    }
    if (kind == "reciprocal-one-plus-fplus")
        return BetaFunction::reciprocal_one_plus_fplus(
            fspec_from_config(require_object(beta_cfg, "f")),
            get_number(beta_cfg, "scale", 1.0));
    throw std::invalid_argument("config: unknown beta kind \"" + kind + "\"");
}

FSpec fspec_from_config(const json& fspec_cfg) {
    if (!fspec_cfg.is_object())
        throw std::invalid_argument("config: \"f\" must be an object");
    const std::string kind = require_string(fspec_cfg, "kind");
    if (!fspec_cfg.contains("c_f"))
        throw std::invalid_argument("config: f spec needs \"c_f\"");
    const double c_f = fspec_cfg.at("c_f").get<double>();
    if (kind == "log") return FSpec::log_classic(c_f);
    if (kind == "shifted-power-log") {
        if (!fspec_cfg.contains("q"))
            throw std::invalid_argument("config: shifted-power-log needs \"q\"");
        return FSpec::shifted_power_log(fspec_cfg.at("q").get<double>(), c_f);
    }
    throw std::invalid_argument("config: unknown f kind \"" + kind + "\"");
}

GridMeasure grid_from_config(const LineMeasure& m, const json& cfg) {
    int points = 2000;
    if (cfg.contains("grid")) {
        const json& g = require_object(cfg, "grid");
        points = get_int(g, "points", 2000);
        if (g.contains("window")) {
            const json& w = g.at("window");
            if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
                throw std::invalid_argument("config: \"window\" must be [lo, hi]");
            return discretize(m, points, {w[0].get<double>(), w[1].get<double>()});
        }
    }
    return discretize(m, points);
}

TrialFamily family_from_config(const json& cfg, std::optional<std::uint64_t> seed_override) {
    TrialFamily f;
    if (cfg.contains("family")) {
        const json& fj = require_object(cfg, "family");
        f.seed = static_cast<std::uint64_t>(get_number(fj, "seed", 1.0));
        f.bumps = get_int(fj, "bumps", f.bumps);
        f.ramps = get_int(fj, "ramps", f.ramps);
        f.polynomials = get_int(fj, "polynomials", f.polynomials);
        if (fj.contains("adversarial")) {
            if (!fj.at("adversarial").is_boolean())
                throw std::invalid_argument("config: \"adversarial\" must be a boolean");
            f.adversarial = fj.at("adversarial").get<bool>();
        }
        if (f.bumps < 0 || f.ramps < 0 || f.polynomials < 0 || f.count() <= 0)
            throw std::invalid_argument("config: trial family must contain at least one trial");
    }
    if (seed_override) f.seed = *seed_override;
    return f;
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_array())
        throw std::invalid_argument("config: missing numeric array \"" + field + "\"");
    std::vector<double> out;
    for (const json& v : j.at(field)) {
        if (!v.is_number())
            throw std::invalid_argument("config: \"" + field + "\" must contain numbers only");
        out.push_back(v.get<double>());
    }
    if (out.empty()) throw std::invalid_argument("config: \"" + field + "\" must not be empty");
    return out;
}

double config_number(const json& j, const std::string& field, double fallback) {
    return get_number(j, field, fallback);
}

int config_int(const json& j, const std::string& field, int fallback) {
    return get_int(j, field, fallback);
}

std::vector<IntervalSet> interval_sets_from_config(const json& cfg, const LineMeasure& m) {
    std::vector<IntervalSet> sets;
    if (cfg.contains("interval_sets")) {
        const json& arr = cfg.at("interval_sets");
        if (!arr.is_array())
            throw std::invalid_argument("config: \"interval_sets\" must be an array");
        for (const json& set_j : arr) {
            if (!set_j.is_array())
                throw std::invalid_argument("config: each interval set must be an array");
            IntervalSet set;
            for (const json& iv : set_j) {
                if (!iv.is_array() || iv.size() != 2)
                    throw std::invalid_argument(
                        "config: intervals must be [lo, hi] pairs in \"interval_sets\"");
                set.push_back({interval_endpoint(iv[0], "interval_sets"),
                               interval_endpoint(iv[1], "interval_sets")});
            }
            sets.push_back(std::move(set));
        }
        if (sets.empty())
            throw std::invalid_argument("config: \"interval_sets\" must not be empty");
        return sets;
    }
    const double inf = std::numeric_limits<double>::infinity();
    sets.push_back({{-inf, m.quantile(0.3)}});
    sets.push_back({{m.quantile(0.4), m.quantile(0.6)}});
    sets.push_back({{-inf, m.quantile(0.2)}, {m.quantile(0.5), m.quantile(0.7)}});
    return sets;
}

}  // namespace isoperim
