#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isoperim/capacity.hpp"
#include "isoperim/config.hpp"
#include "isoperim/generator.hpp"
#include "isoperim/inequality_tests.hpp"
#include "isoperim/product2d.hpp"
#include "isoperim/profile.hpp"
#include "isoperim/util.hpp"

namespace fs = std::filesystem;
using namespace isoperim;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

json load_config(const CommonArgs& args) { return load_json_file(args.config_path); }

fs::path out_path(const CommonArgs& args, const std::string& name) {
    fs::create_directories(args.out_dir);
    return fs::path(args.out_dir) / name;
}

void write_json_file(const fs::path& p, const json& j) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("could not open " + p.string());
    out << j.dump(2) << '\n';
}

/// Serializes possibly infinite values without losing the divergence signal.
json finite_or_divergent(double v) {
    if (std::isfinite(v)) return v;
    return "divergent";
}

int run_profile(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const double t_min = config_number(cfg, "t_min", 1e-10);
    const int points = config_int(cfg, "points", 200);
    const ProfileTable table = profile_table(m, t_min, points);

    fs::path p;
    if (args.format == "json") {
        json j;
        j["measure"] = m.recipe();
        j["t"] = table.t;
        j["profile"] = table.iso;
        j["comparison"] = table.comparison;
        j["ratio"] = table.ratio;
        j["ratio_min"] = table.ratio_min;
        j["ratio_max"] = table.ratio_max;
        p = out_path(args, "profile.json");
        write_json_file(p, j);
    } else {
        p = out_path(args, "profile.csv");
        std::ofstream out(p);
        if (!out) throw std::runtime_error("could not open " + p.string());
        table.write_csv(out);
    }
    std::cout << "profile: " << table.t.size() << " points, profile/comparison in ["
              << table.ratio_min << ", " << table.ratio_max << "] -> " << p.string() << '\n';
    return 0;
}

int run_hardy(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const json rate_cfg = cfg.contains("rate") ? cfg.at("rate") : json{{"kind", "from-measure"}};
    const RateFunction rate = rate_from_config(rate_cfg, &m.potential());
    const int grid_points = config_int(cfg, "grid_points", 512);
    const HardyConstants h = hardy_constants(m, rate, grid_points);
    const BecknerInterval interval = beckner_constant_interval(h);

    json j;
    j["measure"] = m.recipe();
    j["rate"] = rate.recipe();
    j["grid_points"] = grid_points;
    j["b_minus"] = finite_or_divergent(h.b_minus);
    j["b_plus"] = finite_or_divergent(h.b_plus);
    j["argmax_minus"] = h.argmax_minus;
    j["argmax_plus"] = h.argmax_plus;
    j["divergent"] = h.divergent;
    j["beckner_interval"] = {{"lower", finite_or_divergent(interval.lower)},
                             {"upper", finite_or_divergent(interval.upper)},
                             {"divergent", interval.divergent}};
    const fs::path p = out_path(args, "hardy.json");
    write_json_file(p, j);
    if (h.divergent)
        std::cout << "hardy: divergent -> " << p.string() << '\n';
    else
        std::cout << "hardy: max constant " << h.max_constant() << ", interval ["
                  << interval.lower << ", " << interval.upper << "] -> " << p.string() << '\n';
    return 0;
}

int run_beta(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const json beta_cfg = cfg.contains("beta") ? cfg.at("beta") : json{{"kind", "from-measure"}};
    const BetaFunction beta = beta_from_config(beta_cfg, &m.potential());
    const double s_min = config_number(cfg, "s_min", 1.0);
    const double s_max = config_number(cfg, "s_max", 1e6);
    const int points = config_int(cfg, "points", 200);
    if (!(s_min >= 1.0 && s_max > s_min)) throw std::invalid_argument("config: bad s range");

    std::vector<double> ss(points), bs(points);
    for (int i = 0; i < points; ++i) {
        ss[i] = std::exp(std::log(s_min) + (std::log(s_max) - std::log(s_min)) * i /
                                               std::max(1, points - 1));
        bs[i] = beta(ss[i]);
    }

    fs::path p;
    if (args.format == "json") {
        json j;
        j["measure"] = m.recipe();
        j["beta"] = beta.recipe();
        j["certified"] = beta.certified();
        j["essentially_constant"] = beta.essentially_constant();
        j["s"] = ss;
        j["values"] = bs;
        p = out_path(args, "beta.json");
        write_json_file(p, j);
    } else {
        p = out_path(args, "beta.csv");
        std::ofstream out(p);
        if (!out) throw std::runtime_error("could not open " + p.string());
        out << "s,beta\n";
        for (int i = 0; i < points; ++i)
            out << fmt_double(ss[i]) << ',' << fmt_double(bs[i]) << '\n';
    }
    std::cout << "beta: certified " << (beta.certified() ? "yes" : "no")
              << ", essentially constant " << (beta.essentially_constant() ? "yes" : "no")
              << " -> " << p.string() << '\n';
    return 0;
}

int report_and_exit(const TrialReport& report, const fs::path& p) {
    write_json_file(p, report.to_json());
    std::cout << report.inequality << ": worst " << report.worst_ratio << " vs threshold "
              << report.threshold << " [" << (report.pass() ? "pass" : "FAIL") << "] -> "
              << p.string() << '\n';
    return report.pass() ? 0 : 2;
}

int run_verify_spi(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const GridMeasure gm = grid_from_config(m, cfg);
    const json beta_cfg = cfg.contains("beta") ? cfg.at("beta") : json{{"kind", "from-measure"}};
    const BetaFunction beta = beta_from_config(beta_cfg, &m.potential());
    std::vector<double> s_set{1, 2, 5, 10, 100, 1000};
    if (cfg.contains("s_set")) s_set = number_list(cfg, "s_set");
    const TrialFamily family = family_from_config(cfg, args.seed);
    const double threshold = config_number(cfg, "threshold", 8.0 * 1.05);
    const TrialReport report = super_poincare_test(m, gm, beta, s_set, family, threshold);
    return report_and_exit(report, out_path(args, "spi.json"));
}

int run_verify_beckner(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const GridMeasure gm = grid_from_config(m, cfg);
    const json rate_cfg = cfg.contains("rate") ? cfg.at("rate") : json{{"kind", "from-measure"}};
    const RateFunction rate = rate_from_config(rate_cfg, &m.potential());

    double candidate = config_number(cfg, "candidate_constant", 0.0);
    json interval_json = nullptr;
    if (!(candidate > 0.0)) {
        const BecknerInterval interval = beckner_constant_interval(m, rate);
        interval_json = json{{"lower", finite_or_divergent(interval.lower)},
                             {"upper", finite_or_divergent(interval.upper)},
                             {"divergent", interval.divergent}};
        if (interval.divergent) {
            write_json_file(out_path(args, "beckner.json"),
                            json{{"inequality", "beckner"},
                                 {"measure", m.recipe()},
                                 {"rate", rate.recipe()},
                                 {"beckner_interval", interval_json},
                                 {"verdict", "fail"}});
            std::cout << "beckner: constant diverges [FAIL]\n";
            return 2;
        }
        candidate = interval.upper;
    }

    std::vector<double> p_set{1.001, 1.25, 1.5, 1.75, 1.999};
    if (cfg.contains("p_set")) p_set = number_list(cfg, "p_set");
    const TrialFamily family = family_from_config(cfg, args.seed);
    TrialReport report = beckner_test(m, gm, rate, candidate, p_set, family);
    json j = report.to_json();
    j["beckner_interval"] = interval_json;
    const fs::path p = out_path(args, "beckner.json");
    write_json_file(p, j);
    std::cout << report.inequality << ": worst " << report.worst_ratio << " vs threshold "
              << report.threshold << " [" << (report.pass() ? "pass" : "FAIL") << "] -> "
              << p.string() << '\n';
    return report.pass() ? 0 : 2;
}

int run_verify_fsobolev(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const GridMeasure gm = grid_from_config(m, cfg);
    if (!cfg.contains("f")) throw std::invalid_argument("config: missing \"f\" object");
    const FSpec F = fspec_from_config(cfg.at("f"));
    const TrialFamily family = family_from_config(cfg, args.seed);
    const TrialReport report = fsobolev_test(m, gm, F, family);
    return report_and_exit(report, out_path(args, "fsobolev.json"));
}

int run_semigroup(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    const GridMeasure gm = grid_from_config(m, cfg);
    const Generator gen = make_generator(m, gm);
    const json beta_cfg = cfg.contains("beta") ? cfg.at("beta") : json{{"kind", "from-measure"}};
    const BetaFunction beta = beta_from_config(beta_cfg, &m.potential());

    std::vector<double> times{0.01, 0.1, 1.0};
    if (cfg.contains("times")) times = number_list(cfg, "times");
    std::vector<double> s_set{1.0, 4.0, 16.0};
    if (cfg.contains("s_set")) s_set = number_list(cfg, "s_set");
    const std::vector<IntervalSet> sets = interval_sets_from_config(cfg, m);

    const TrialFamily family = family_from_config(cfg, args.seed);
    const TrialReport spi =
        super_poincare_test(m, gm, beta, s_set, family, 8.0 * 1.05);
    const double factor = std::max(1.0, spi.worst_ratio) * 1.05;

    bool ok = true;
    json results = json::array();
    for (size_t si = 0; si < sets.size(); ++si) {
        const MollifiedSet ms = mollified_indicator(gm, sets[si]);
        const double i2 = grid_integral(gm, ms.f * ms.f);
        const double i1 = grid_integral(gm, ms.f.abs());
        for (double t : times) {
            const SemigroupChecks sc = semigroup_checks(gen, ms.f, t);
            const Eigen::ArrayXd pt = evolve(gen, ms.f, t);
            const double hf = heat_flow_margin(gen, m, sets[si], t, &pt);
            const double lhs = grid_integral(gm, pt * pt);
            json wang = json::array();
            for (double s : s_set) {
                const double b = beta(s) * factor;
                const double decay = std::exp(-2.0 * t / b);
                const double margin = decay * i2 + s * (1.0 - decay) * i1 * i1 - lhs;
                wang.push_back({{"s", s}, {"margin", margin}});
                if (margin < -1e-6) ok = false;
            }
            if (sc.mass_error > 1e-8 || sc.composition_error > 1e-8 || sc.l1_excess > 1e-10 ||
                hf < -1e-3)
                ok = false;
            results.push_back({{"set", si},
                               {"t", t},
                               {"mass_error", sc.mass_error},
                               {"l1_excess", sc.l1_excess},
                               {"composition_error", sc.composition_error},
                               {"heat_flow_margin", hf},
                               {"wang", wang}});
        }
    }

    json j;
    j["measure"] = m.recipe();
    j["grid"] = {{"points", gm.size()},
                 {"window", {gm.window_lo(), gm.window_hi()}},
                 {"spacing", gm.spacing}};
    j["curvature_lower"] = gen.curvature_lower;
    j["beta"] = beta.recipe();
    j["decay_headroom_factor"] = factor;
    json sets_json = json::array();
    for (const auto& set : sets) {
        json s = json::array();
        for (const auto& iv : set)
            s.push_back({std::isinf(iv[0]) ? json("-inf") : json(iv[0]),
                         std::isinf(iv[1]) ? json("inf") : json(iv[1])});
        sets_json.push_back(s);
    }
    j["interval_sets"] = sets_json;
    j["results"] = results;
    j["verdict"] = ok ? "pass" : "fail";
    const fs::path p = out_path(args, "semigroup.json");
    write_json_file(p, j);
    std::cout << "semigroup: " << results.size() << " cases [" << (ok ? "pass" : "FAIL")
              << "] -> " << p.string() << '\n';
    return ok ? 0 : 2;
}

int run_product(const CommonArgs& args) {
    const json cfg = load_config(args);
    const LineMeasure m = measure_from_config(cfg);
    std::vector<double> masses{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    if (cfg.contains("masses")) masses = number_list(cfg, "masses");
    std::optional<double> k_claimed;
    if (cfg.contains("k_claimed")) k_claimed = config_number(cfg, "k_claimed", 0.0);
    const double angle = config_number(cfg, "angle", kPi / 4.0);
    const ProductComparison comp = compare_candidates(m, masses, k_claimed, angle);

    const fs::path csv = out_path(args, "product.csv");
    comp.write_csv(csv.string());
    json j = comp.to_json();
    j["measure"] = m.recipe();
    j["angle"] = angle;
    const fs::path p = out_path(args, "product.json");
    write_json_file(p, j);
    std::cout << "product: k_empirical " << comp.k_empirical << ", profile factor "
              << comp.k_profile << " [" << (comp.pass() ? "pass" : "FAIL") << "] -> "
              << csv.string() << ", " << p.string() << '\n';
    return comp.pass() ? 0 : 2;
}

int run_plotdata(const std::string& in_path, const CommonArgs& args) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "error: could not open " << in_path << '\n';
        return 1;
    }
    std::string header;
    if (!std::getline(in, header) || header.empty()) {
        std::cerr << "error: " << in_path << " is empty\n";
        return 1;
    }
    std::vector<std::string> columns;
    {
        std::istringstream hs(header);
        std::string cell;
        while (std::getline(hs, cell, ',')) columns.push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                std::cerr << "error: non-numeric cell \"" << cell << "\" in " << in_path << '\n';
                return 1;
            }
        }
        if (row.size() != columns.size()) {
            std::cerr << "error: ragged row in " << in_path << '\n';
            return 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::cerr << "error: no data rows in " << in_path << '\n';
        return 1;
    }

    const std::string stem = fs::path(in_path).stem().string();
    const fs::path dat = out_path(args, stem + ".dat");
    {
        std::ofstream out(dat);
        if (!out) throw std::runtime_error("could not open " + dat.string());
        out << '#';
        for (const auto& c : columns) out << ' ' << c;
        out << '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                out << (i ? " " : "") << fmt_double(row[i]);
            out << '\n';
        }
    }

    double x_min = rows.front()[0], x_max = rows.front()[0];
    for (const auto& row : rows) {
        x_min = std::min(x_min, row[0]);
        x_max = std::max(x_max, row[0]);
    }
    const bool log_x = x_min > 0.0 && x_max / x_min > 1e3;
    const fs::path caption = out_path(args, stem + ".caption.txt");
    {
        std::ofstream out(caption);
        out << "Data: " << stem << " (" << rows.size() << " rows).\nColumns:";
        for (const auto& c : columns) out << ' ' << c;
        out << ".\nSuggested axes: x = " << columns[0] << (log_x ? " (log scale)" : "");
        if (columns.size() > 1) out << ", y = " << columns[1];
        out << ".\n";
    }
    std::cout << "plotdata: " << rows.size() << " rows -> " << dat.string() << ", "
              << caption.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoperimetric profiles, capacity criteria, and semigroup checks "
                 "for symmetric line measures and their two-fold products"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string in_path;
    std::uint64_t seed_value = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", args.config_path, "JSON run configuration")->required();
        sub->add_option("--out", args.out_dir, "output directory (default .)");
        sub->add_option("--format", args.format, "table format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed_value, "trial-family seed override")
            ->each([&](const std::string&) { seed_given = true; });
        return sub;
    };

    CLI::App* profile = add_common(app.add_subcommand("profile", "isoperimetric profile table"), true);
    CLI::App* hardy = add_common(app.add_subcommand("hardy", "Hardy-type constants and Beckner interval"), true);
    CLI::App* beta = add_common(app.add_subcommand("beta", "decay-rate table and certificates"), true);
    CLI::App* vspi = add_common(app.add_subcommand("verify-spi", "trial-based super-Poincare check"), true);
    CLI::App* vbeck = add_common(app.add_subcommand("verify-beckner", "trial-based Beckner check"), true);
    CLI::App* vfsob = add_common(app.add_subcommand("verify-fsobolev", "trial-based F-Sobolev check"), true);
    CLI::App* semi = add_common(app.add_subcommand("semigroup", "semigroup identities and decay margins"), true);
    CLI::App* product = add_common(app.add_subcommand("product", "two-fold product candidate comparison"), true);
    CLI::App* plotdata = add_common(app.add_subcommand("plotdata", "convert a result CSV to plot-ready data"), false);
    plotdata->add_option("--in", in_path, "input CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (seed_given) args.seed = seed_value;

    try {
        if (profile->parsed()) return run_profile(args);
        if (hardy->parsed()) return run_hardy(args);
        if (beta->parsed()) return run_beta(args);
        if (vspi->parsed()) return run_verify_spi(args);
        if (vbeck->parsed()) return run_verify_beckner(args);
        if (vfsob->parsed()) return run_verify_fsobolev(args);
        if (semi->parsed()) return run_semigroup(args);
        if (product->parsed()) return run_product(args);
        if (plotdata->parsed()) return run_plotdata(in_path, args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no command\n";
    return 1;
}
