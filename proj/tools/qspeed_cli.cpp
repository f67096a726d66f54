// Command-line front end: regenerates figure datasets as CSV, runs the
// separable-state survey, and computes single quantities.
//
// Exit codes: 0 success, 2 usage/validation error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qspeed/angleopt.hpp"
#include "qspeed/quantify.hpp"
#include "qspeed/survey.hpp"

namespace {

using namespace qspeed;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad number in list: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty value list");
    return out;
}

struct ConfigFlags {
    std::string named;  // "xx" or "z-z"
    std::optional<double> theta_a, phi_a, theta_b, phi_b;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--config", named, "named config: xx (both fields +x) or z-z (+z and -z)");
        cmd->add_option("--theta-a", theta_a, "field a polar angle [rad]");
        cmd->add_option("--phi-a", phi_a, "field a azimuth [rad]");
        cmd->add_option("--theta-b", theta_b, "field b polar angle [rad]");
        cmd->add_option("--phi-b", phi_b, "field b azimuth [rad]");
    }

    MagnetConfig resolve(const MagnetConfig& fallback) const {
        if (!named.empty()) {
            if (named == "xx") return config_xx();
            if (named == "z-z") return config_zmz();
            throw std::invalid_argument("unknown config shorthand: " + named + " (use xx or z-z)");
        }
        if (theta_a || phi_a || theta_b || phi_b) {
            return MagnetConfig{
                BlochDirection::from_angles(theta_a.value_or(0.0), phi_a.value_or(0.0)),
                BlochDirection::from_angles(theta_b.value_or(0.0), phi_b.value_or(0.0))};
        }
        return fallback;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        std::exit(kExitIo);
    }
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) {
        std::cerr << "error: write failed: " << path << "\n";
        std::exit(kExitIo);
    }
}

int cmd_fig_kickoff(const std::string& family, int x_steps, const ConfigFlags& cf, const std::string& out_path) {
    const Family fam = family_from_name(family.c_str());
    if (fam != Family::werner && fam != Family::gisin && fam != Family::rho3)
        throw std::invalid_argument("fig-kickoff supports werner, gisin, rho3");
    if (x_steps < 2) throw std::invalid_argument("--x-steps must be >= 2");
    const MagnetConfig cfg = cf.resolve(config_xx());

    std::ofstream f = open_out(out_path);
    f << "family,x,tau_sq,rate,delta_e_mean,delta_e_var\n";
    for (int i = 0; i < x_steps; ++i) {
        const double x = static_cast<double>(i) / (x_steps - 1);
        const DensityMatrix rho = build_family({fam, x});
        const KickoffResult k = kickoff(rho, cfg);
        const EnergyMoments e = energy_moments(rho, cfg);
        f << family_name(fam) << ',' << fmt(x) << ','
          << (k.stationary() ? std::string{} : fmt(*k.tau_sq)) << ',' << fmt(k.rate) << ','
          << fmt(e.mean) << ',' << fmt(e.variance) << '\n';
    }
    finish_out(f, out_path);
    return 0;
}

void write_distance_rows(std::ofstream& f, const std::string& prefix, Family fam, double x,
                         const MagnetConfig& cfg, double t_max) {
    const DensityMatrix rho = build_family({fam, x});
    const TimeSeries s = distance_series(rho, cfg, TimeGrid{t_max, 721});
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        f << prefix << family_name(fam) << ',' << fmt(x) << ','
          << fmt(cfg.dir_a.theta) << ',' << fmt(cfg.dir_a.phi) << ','
          << fmt(cfg.dir_b.theta) << ',' << fmt(cfg.dir_b.phi) << ','
          << fmt(s.times[i]) << ',' << fmt(s.values[i]) << '\n';
    }
}

int cmd_fig_distance(const std::string& family, const std::string& x_csv, const ConfigFlags& cf,
                     double t_max, const std::string& out_path) {
    const Family fam = family_from_name(family.c_str());
    const std::vector<double> xs = parse_list(x_csv);
    const MagnetConfig cfg = cf.resolve(config_zmz());

    std::ofstream f = open_out(out_path);
    f << "family,x,theta_a,phi_a,theta_b,phi_b,t,distance\n";
    for (double x : xs) write_distance_rows(f, "", fam, x, cfg, t_max);
    finish_out(f, out_path);
    return 0;
}

int cmd_fig_zaxis(const std::string& x_csv, const std::string& out_path) {
    const std::vector<double> xs = parse_list(x_csv);
    const MagnetConfig cfg = config_zmz();
    std::ofstream f = open_out(out_path);
    f << "family,x,theta_a,phi_a,theta_b,phi_b,t,distance\n";
    for (Family fam : {Family::werner, Family::gisin, Family::rho3, Family::product_mixture})
        for (double x : xs) write_distance_rows(f, "", fam, x, cfg, M_PI);
    finish_out(f, out_path);
    return 0;
}

int cmd_fig_product_mixture(const std::string& mode, const std::string& a_csv, int opt_budget,
                            const std::string& out_path) {
    if (mode != "period" && mode != "distance") throw std::invalid_argument("--mode must be period or distance");
    const std::vector<double> as = parse_list(a_csv);
    for (double a : as)
        if (a < 0.0 || a > 1.0) throw std::invalid_argument("a values must be in [0,1]");

    std::ofstream f = open_out(out_path);
    f << "a,family,x,theta_a,phi_a,theta_b,phi_b,t,distance\n";
    for (double a : as) {
        MagnetConfig cfg = config_xx();
        if (mode == "distance") {
            const DensityMatrix rho = build_family({Family::product_mixture, a});
            cfg = optimize_angles(rho, ObjectiveKind::max_distance, opt_budget).config;
        }
        write_distance_rows(f, fmt(a) + ",", Family::product_mixture, a, cfg, M_PI);
    }
    finish_out(f, out_path);
    return 0;
}

int cmd_survey(long samples, std::uint64_t seed, int shards, int opt_budget, int max_terms,
               const std::string& out_path) {
    SurveyConfig cfg{samples, seed, shards, opt_budget, max_terms};
    const std::vector<SurveyRecord> records = run_survey(cfg);

    std::ofstream f = open_out(out_path);
    write_survey_csv(f, records);
    finish_out(f, out_path);

    const SurveySummary s = summarize(records);
    std::cout << s.count << ',' << fmt(s.mean_x) << ',' << fmt(s.median_x) << ',' << fmt(s.std_x) << ','
              << fmt(s.mean_y) << ',' << fmt(s.median_y) << ',' << fmt(s.std_y) << ','
              << fmt(s.max_d_quarter) << '\n';
    return 0;
}

struct ComputeFlags {
    std::string family;
    std::optional<double> x, alpha, gamma;
    std::optional<double> t;
    int resolution = 2000;
    ConfigFlags config;
};

DensityMatrix compute_state(const ComputeFlags& cf) {
    if (cf.family.empty()) throw std::invalid_argument("missing --family");
    const Family fam = family_from_name(cf.family.c_str());
    double param;
    if (fam == Family::pure_phi)
        param = cf.alpha ? *cf.alpha : (cf.x ? *cf.x : throw std::invalid_argument("pure_phi needs --alpha"));
    else if (fam == Family::pure_ent)
        param = cf.gamma ? *cf.gamma : (cf.x ? *cf.x : throw std::invalid_argument("pure_ent needs --gamma"));
    else
        param = cf.x ? *cf.x : throw std::invalid_argument("missing --x");
    return build_family({fam, param});
}

int cmd_compute(const std::string& quantity, const ComputeFlags& cf) {
    double value;
    if (quantity == "concurrence") {
        value = concurrence(compute_state(cf));
    } else if (quantity == "entropy") {
        value = entropy_vn(compute_state(cf));
    } else if (quantity == "mutual-info") {
        value = mutual_information(compute_state(cf));
    } else if (quantity == "kickoff") {
        value = kickoff(compute_state(cf), cf.config.resolve(config_xx())).rate;
    } else if (quantity == "t-perp") {
        if (!cf.alpha) throw std::invalid_argument("t-perp needs --alpha (pure state alpha|11> + beta|00>)");
        value = t_perp_pure(*cf.alpha, cf.config.resolve(config_xx()));
    } else if (quantity == "distance") {
        if (!cf.t) throw std::invalid_argument("distance needs --t");
        const DensityMatrix rho = compute_state(cf);
        value = trace_distance(rho, evolve(rho, cf.config.resolve(config_xx()), *cf.t));
    } else {
        throw std::invalid_argument("unknown quantity: " + quantity);
    }
    std::cout << fmt(value) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit mixed-state evolution laboratory"};
    app.require_subcommand(1);

    // fig-kickoff
    auto* fk = app.add_subcommand("fig-kickoff", "decay coefficient vs mixing weight");
    std::string fk_family;
    int fk_steps = 101;
    ConfigFlags fk_cfg;
    std::string fk_out;
    fk->add_option("--family", fk_family, "werner | gisin | rho3")->required();
    fk->add_option("--x-steps", fk_steps, "number of x samples on [0,1]");
    fk_cfg.add_to(fk);
    fk->add_option("--out", fk_out, "output CSV path")->required();

    // fig-distance
    auto* fd = app.add_subcommand("fig-distance", "trace distance vs time for a family");
    std::string fd_family, fd_x, fd_out;
    double fd_tmax = M_PI;
    ConfigFlags fd_cfg;
    fd->add_option("--family", fd_family, "state family")->required();
    fd->add_option("--x", fd_x, "comma-separated mixing values")->required();
    fd_cfg.add_to(fd);
    fd->add_option("--t-max", fd_tmax, "end of the time grid [rad]");
    fd->add_option("--out", fd_out, "output CSV path")->required();

    // fig-product-mixture
    auto* fp = app.add_subcommand("fig-product-mixture", "product-mixture period/distance trade-off");
    std::string fp_mode, fp_a, fp_out;
    int fp_budget = 400;
    fp->add_option("--mode", fp_mode, "period | distance")->required();
    fp->add_option("--a", fp_a, "comma-separated mixture weights")->required();
    fp->add_option("--opt-budget", fp_budget, "evaluations per refinement (distance mode)");
    fp->add_option("--out", fp_out, "output CSV path")->required();

    // fig-zaxis
    auto* fz = app.add_subcommand("fig-zaxis", "trace distance under the (+z,-z) configuration");
    std::string fz_x, fz_out;
    fz->add_option("--x", fz_x, "comma-separated mixing values")->required();
    fz->add_option("--out", fz_out, "output CSV path")->required();

    // survey
    auto* sv = app.add_subcommand("survey", "separable-state Monte Carlo survey");
    long sv_samples = 0;
    std::uint64_t sv_seed = 0;
    int sv_shards = 1, sv_budget = 200, sv_terms = 8;
    std::string sv_out;
    sv->add_option("--samples", sv_samples, "number of sampled states")->required();
    sv->add_option("--seed", sv_seed, "PRNG seed")->required();
    sv->add_option("--shards", sv_shards, "parallel shards");
    sv->add_option("--opt-budget", sv_budget, "evaluations per refinement");
    sv->add_option("--max-terms", sv_terms, "max pure-product terms per sample");
    sv->add_option("--out", sv_out, "output CSV path")->required();

    // compute
    auto* cp = app.add_subcommand("compute", "one-shot quantity");
    std::string cp_quantity;
    ComputeFlags cp_flags;
    cp->add_option("quantity", cp_quantity, "concurrence | entropy | mutual-info | kickoff | t-perp | distance")
        ->required();
    cp->add_option("--family", cp_flags.family, "state family");
    cp->add_option("--x", cp_flags.x, "mixing weight (also accepts product-mixture a)");
    cp->add_option("--a", cp_flags.x, "alias of --x");
    cp->add_option("--alpha", cp_flags.alpha, "pure_phi amplitude");
    cp->add_option("--gamma", cp_flags.gamma, "pure_ent angle [rad]");
    cp->add_option("--t", cp_flags.t, "evolution time [rad]");
    cp->add_option("--resolution", cp_flags.resolution, "numeric scan resolution");
    cp_flags.config.add_to(cp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (fk->parsed()) return cmd_fig_kickoff(fk_family, fk_steps, fk_cfg, fk_out);
        if (fd->parsed()) return cmd_fig_distance(fd_family, fd_x, fd_cfg, fd_tmax, fd_out);
        if (fp->parsed()) return cmd_fig_product_mixture(fp_mode, fp_a, fp_budget, fp_out);
        if (fz->parsed()) return cmd_fig_zaxis(fz_x, fz_out);
        if (sv->parsed()) return cmd_survey(sv_samples, sv_seed, sv_shards, sv_budget, sv_terms, sv_out);
        if (cp->parsed()) return cmd_compute(cp_quantity, cp_flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
