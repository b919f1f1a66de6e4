// SPDX-License-Identifier: Apache-2.0
//
// qdel: command-line front end for the dissipative-deleter library.
// Subcommands: evolve (trajectory CSV), figure (fig1/fig2/fig3 datasets),
// sweep (one-parameter scans), check (closed form vs RK4 oracle).
// Exit codes: 0 success/pass, 1 invalid arguments, 2 numerical failure or
// failed check.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdel/qdel.hpp"

namespace {

using nlohmann::json;

/// Ties a CLI option to its config-file key so file values can fill in
/// anything the command line left unset (flags win over the file).
struct Binding {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> apply;
    std::function<std::string()> render;  // current value, for override echoes
    bool from_config = false;
};

using Bindings = std::map<std::string, Binding>;

void load_config_file(const std::string& path, Bindings& bindings) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file '" + path + "' is not readable");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a flat JSON object");
    for (const auto& [key, value] : j.items()) {
        auto it = bindings.find(key);
        if (it == bindings.end())
            throw std::invalid_argument("config key '" + key + "' does not match any flag");
        if (it->second.opt != nullptr && it->second.opt->count() > 0) continue;  // flag wins
        try {
            it->second.apply(value);
            it->second.from_config = true;
        } catch (const json::exception& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }
}

bool was_set(const Bindings& bindings, const std::string& key) {
    auto it = bindings.find(key);
    if (it == bindings.end()) return false;
    return it->second.from_config || (it->second.opt != nullptr && it->second.opt->count() > 0);
}

void write_output(const std::string& out_path, const std::string& csv) {
    if (out_path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << csv;
    if (!out) throw std::invalid_argument("failed writing output file '" + out_path + "'");
    std::cout << "wrote " << out_path << "\n";
}

/// Everything a subcommand can consume. Options register against this one
/// struct; each subcommand exposes the subset it uses.
struct Options {
    qdel::RunConfig cfg;
    std::string channel = "dissipative";
    std::string config_path;
    std::string out_path;

    std::string figure_id;
    std::string axis = "T";
    double axis_min = 0.0;
    double axis_max = 10.0;
    int axis_steps = 21;
};

void add_bath_options(CLI::App* cmd, Options& o, Bindings& b) {
    b["gamma0"] = {cmd->add_option("--gamma0", o.cfg.bath.gamma0, "Coupling rate gamma0 > 0"),
                   [&o](const json& v) { o.cfg.bath.gamma0 = v.get<double>(); },
                   [&o] { return qdel::format_number(o.cfg.bath.gamma0); }};
    b["omega"] = {cmd->add_option("--omega", o.cfg.bath.omega, "Qubit level splitting omega > 0"),
                  [&o](const json& v) { o.cfg.bath.omega = v.get<double>(); },
                  [&o] { return qdel::format_number(o.cfg.bath.omega); }};
    b["temp"] = {cmd->add_option("--temp", o.cfg.bath.T, "Bath temperature T >= 0"),
                 [&o](const json& v) { o.cfg.bath.T = v.get<double>(); },
                 [&o] { return qdel::format_number(o.cfg.bath.T); }};
    b["squeeze-r"] = {cmd->add_option("--squeeze-r", o.cfg.bath.r, "Squeezing magnitude r"),
                      [&o](const json& v) { o.cfg.bath.r = v.get<double>(); },
                      [&o] { return qdel::format_number(o.cfg.bath.r); }};
    b["squeeze-phi"] = {cmd->add_option("--squeeze-phi", o.cfg.bath.Phi, "Squeezing phase Phi"),
                        [&o](const json& v) { o.cfg.bath.Phi = v.get<double>(); },
                        [&o] { return qdel::format_number(o.cfg.bath.Phi); }};
}

void add_state_options(CLI::App* cmd, Options& o, Bindings& b) {
    b["theta0"] = {cmd->add_option("--theta0", o.cfg.angles.theta0, "Polar angle in [0, pi]"),
                   [&o](const json& v) { o.cfg.angles.theta0 = v.get<double>(); },
                   [&o] { return qdel::format_number(o.cfg.angles.theta0); }};
    b["phi0"] = {cmd->add_option("--phi0", o.cfg.angles.phi0, "Azimuth in [0, 2*pi)"),
                 [&o](const json& v) { o.cfg.angles.phi0 = v.get<double>(); },
                 [&o] { return qdel::format_number(o.cfg.angles.phi0); }};
    b["mixed"] = {cmd->add_flag("--mixed", o.cfg.mixed, "Start from the maximally mixed state"),
                  [&o](const json& v) { o.cfg.mixed = v.get<bool>(); },
                  [&o] { return o.cfg.mixed ? std::string("true") : std::string("false"); }};
}

void add_channel_options(CLI::App* cmd, Options& o, Bindings& b) {
    b["channel"] = {cmd->add_option("--channel", o.channel, "Evolution channel")
                        ->check(CLI::IsMember({"dissipative", "qnd"})),
                    [&o](const json& v) { o.channel = v.get<std::string>(); },
                    [&o] { return o.channel; }};
    b["kernel"] = {cmd->add_option("--kernel", o.cfg.kernel,
                                   "QND kernel: zero, linear, quadratic-saturating"),
                   [&o](const json& v) { o.cfg.kernel = v.get<std::string>(); },
                   [&o] { return o.cfg.kernel; }};
    b["kappa"] = {cmd->add_option("--kappa", o.cfg.kappa, "Kernel rate parameter"),
                  [&o](const json& v) { o.cfg.kappa = v.get<double>(); },
                  [&o] { return qdel::format_number(o.cfg.kappa); }};
    b["tau"] = {cmd->add_option("--tau", o.cfg.tau, "Kernel saturation time"),
                [&o](const json& v) { o.cfg.tau = v.get<double>(); },
                [&o] { return qdel::format_number(o.cfg.tau); }};
}

void add_grid_options(CLI::App* cmd, Options& o, Bindings& b) {
    b["t-max"] = {cmd->add_option("--t-max", o.cfg.t_max, "End of the time grid"),
                  [&o](const json& v) { o.cfg.t_max = v.get<double>(); },
                  [&o] { return qdel::format_number(o.cfg.t_max); }};
    b["points"] = {cmd->add_option("--points", o.cfg.n_points, "Grid point count (>= 2)"),
                   [&o](const json& v) { o.cfg.n_points = v.get<int>(); },
                   [&o] { return std::to_string(o.cfg.n_points); }};
}

void add_io_options(CLI::App* cmd, Options& o, Bindings& b) {
    cmd->add_option("--config", o.config_path, "Flat JSON config; flags override its values");
    b["out"] = {cmd->add_option("--out", o.out_path, "Output CSV path (default: stdout)"),
                [&o](const json& v) { o.out_path = v.get<std::string>(); },
                [&o] { return o.out_path; }};
}

qdel::RunConfig resolve_config(const Options& o, Bindings& b) {
    if (!o.config_path.empty()) load_config_file(o.config_path, b);
    qdel::RunConfig cfg = o.cfg;
    cfg.channel = o.channel == "qnd" ? qdel::Channel::qnd : qdel::Channel::dissipative;
    return cfg;
}

int run_evolve_cmd(const Options& o, Bindings& b) {
    const qdel::RunConfig cfg = resolve_config(o, b);
    write_output(o.out_path, qdel::render_evolve_csv(cfg, qdel::run_evolve(cfg)));
    return 0;
}

int run_figure_cmd(const Options& o, Bindings& b) {
    if (!o.config_path.empty()) load_config_file(o.config_path, b);
    if (o.figure_id.empty()) throw std::invalid_argument("figure id is required (fig1|fig2|fig3)");

    // Start from the figure's own defaults and apply only what the user set,
    // echoing every departure so the dataset is self-describing.
    std::vector<std::string> overrides;
    const auto echo = [&](const std::string& key) {
        overrides.push_back("override: " + key + "=" + b.at(key).render());
    };

    qdel::FigureDataset fig;
    if (o.figure_id == "fig1" || o.figure_id == "fig3") {
        double gamma0 = o.figure_id == "fig1" ? 0.5 : 0.6;
        double omega = 1.0, t_max = 30.0, phi = 0.0;
        int n_points = 601;
        if (was_set(b, "gamma0")) { gamma0 = o.cfg.bath.gamma0; echo("gamma0"); }
        if (was_set(b, "omega")) { omega = o.cfg.bath.omega; echo("omega"); }
        if (was_set(b, "t-max")) { t_max = o.cfg.t_max; echo("t-max"); }
        if (was_set(b, "points")) { n_points = o.cfg.n_points; echo("points"); }
        if (was_set(b, "squeeze-phi")) {
            if (o.figure_id != "fig3")
                throw std::invalid_argument("--squeeze-phi only applies to fig3");
            phi = o.cfg.bath.Phi;
            echo("squeeze-phi");
        }
        fig = o.figure_id == "fig1" ? qdel::make_fig1(gamma0, omega, t_max, n_points)
                                    : qdel::make_fig3(gamma0, omega, t_max, n_points, phi);
    } else if (o.figure_id == "fig2") {
        if (was_set(b, "squeeze-phi"))
            throw std::invalid_argument("--squeeze-phi only applies to fig3");
        double gamma0 = 0.5, omega = 1.0, t_eval = 10.0;
        int n_temps = 200;
        if (was_set(b, "gamma0")) { gamma0 = o.cfg.bath.gamma0; echo("gamma0"); }
        if (was_set(b, "omega")) { omega = o.cfg.bath.omega; echo("omega"); }
        if (was_set(b, "t-max")) { t_eval = o.cfg.t_max; echo("t-max"); }
        if (was_set(b, "points")) { n_temps = o.cfg.n_points; echo("points"); }
        fig = qdel::make_fig2(gamma0, omega, t_eval, n_temps);
    } else {
        throw std::invalid_argument("unknown figure id '" + o.figure_id +
                                    "' (known: fig1, fig2, fig3)");
    }
    write_output(o.out_path, qdel::render_figure_csv(fig, overrides));
    return 0;
}

int run_sweep_cmd(const Options& o, Bindings& b) {
    const qdel::RunConfig cfg = resolve_config(o, b);
    qdel::SweepSpec spec;
    spec.axis = qdel::sweep_axis_from_name(o.axis);
    spec.min = o.axis_min;
    spec.max = o.axis_max;
    spec.steps = o.axis_steps;
    write_output(o.out_path, qdel::render_sweep_csv(cfg, spec, qdel::run_sweep(cfg, spec)));
    return 0;
}

int run_check_cmd(const Options& o, Bindings& b) {
    const qdel::RunConfig cfg = resolve_config(o, b);
    const qdel::ComparisonReport report = qdel::run_check(cfg);
    const bool pass = report.max_err <= cfg.tol;
    if (!o.out_path.empty())
        write_output(o.out_path, qdel::render_check_csv(cfg, report));
    else
        std::cout << qdel::render_check_csv(cfg, report);
    std::cout << "max_err=" << qdel::format_number(report.max_err)
              << " tol=" << qdel::format_number(cfg.tol)
              << " verdict=" << (pass ? "pass" : "fail") << "\n";
    return pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Environment-mediated qubit deleter: trajectories, figure datasets, "
                 "parameter sweeps, and an independent integrator cross-check"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qdel ") + qdel::kVersion);

    Options o;
    Bindings evolve_b, figure_b, sweep_b, check_b;

    CLI::App* evolve = app.add_subcommand("evolve", "Evolve one state; CSV trajectory");
    add_channel_options(evolve, o, evolve_b);
    add_bath_options(evolve, o, evolve_b);
    add_state_options(evolve, o, evolve_b);
    add_grid_options(evolve, o, evolve_b);
    add_io_options(evolve, o, evolve_b);

    // Figures only expose the knobs their parameter sets actually admit;
    // anything else would silently contradict the emitted dataset.
    CLI::App* figure = app.add_subcommand("figure", "Emit a reference figure dataset");
    figure->add_option("id", o.figure_id, "fig1 | fig2 | fig3");
    figure_b["gamma0"] = {figure->add_option("--gamma0", o.cfg.bath.gamma0, "Coupling rate"),
                          [&o](const nlohmann::json& v) { o.cfg.bath.gamma0 = v.get<double>(); },
                          [&o] { return qdel::format_number(o.cfg.bath.gamma0); }};
    figure_b["omega"] = {figure->add_option("--omega", o.cfg.bath.omega, "Level splitting"),
                         [&o](const nlohmann::json& v) { o.cfg.bath.omega = v.get<double>(); },
                         [&o] { return qdel::format_number(o.cfg.bath.omega); }};
    figure_b["squeeze-phi"] = {
        figure->add_option("--squeeze-phi", o.cfg.bath.Phi, "Squeezing phase (fig3 only)"),
        [&o](const nlohmann::json& v) { o.cfg.bath.Phi = v.get<double>(); },
        [&o] { return qdel::format_number(o.cfg.bath.Phi); }};
    add_grid_options(figure, o, figure_b);
    add_io_options(figure, o, figure_b);

    CLI::App* sweep = app.add_subcommand("sweep", "Scan one parameter axis; CSV rows");
    sweep_b["axis"] = {sweep->add_option("--axis", o.axis, "Axis: gamma0, T, r, Phi, t"),
                       [&o](const nlohmann::json& v) { o.axis = v.get<std::string>(); },
                       [&o] { return o.axis; }};
    sweep_b["min"] = {sweep->add_option("--min", o.axis_min, "Axis start"),
                      [&o](const nlohmann::json& v) { o.axis_min = v.get<double>(); },
                      [&o] { return qdel::format_number(o.axis_min); }};
    sweep_b["max"] = {sweep->add_option("--max", o.axis_max, "Axis end"),
                      [&o](const nlohmann::json& v) { o.axis_max = v.get<double>(); },
                      [&o] { return qdel::format_number(o.axis_max); }};
    sweep_b["steps"] = {sweep->add_option("--steps", o.axis_steps, "Axis point count (>= 2)"),
                        [&o](const nlohmann::json& v) { o.axis_steps = v.get<int>(); },
                        [&o] { return std::to_string(o.axis_steps); }};
    add_channel_options(sweep, o, sweep_b);
    add_bath_options(sweep, o, sweep_b);
    add_state_options(sweep, o, sweep_b);
    add_grid_options(sweep, o, sweep_b);
    add_io_options(sweep, o, sweep_b);

    CLI::App* check = app.add_subcommand("check", "Compare closed form against the RK4 oracle");
    check_b["dt"] = {check->add_option("--dt", o.cfg.dt, "Oracle integrator step"),
                     [&o](const nlohmann::json& v) { o.cfg.dt = v.get<double>(); },
                     [&o] { return qdel::format_number(o.cfg.dt); }};
    check_b["tol"] = {check->add_option("--tol", o.cfg.tol, "Agreement tolerance"),
                      [&o](const nlohmann::json& v) { o.cfg.tol = v.get<double>(); },
                      [&o] { return qdel::format_number(o.cfg.tol); }};
    add_channel_options(check, o, check_b);
    add_bath_options(check, o, check_b);
    add_state_options(check, o, check_b);
    add_grid_options(check, o, check_b);
    add_io_options(check, o, check_b);

    try {
        app.parse(argc, argv);
        if (evolve->parsed()) return run_evolve_cmd(o, evolve_b);
        if (figure->parsed()) return run_figure_cmd(o, figure_b);
        if (sweep->parsed()) return run_sweep_cmd(o, sweep_b);
        if (check->parsed()) return run_check_cmd(o, check_b);
        return 1;  // unreachable: require_subcommand(1)
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const qdel::numerical_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const qdel::unsupported_regime& e) {
        std::cerr << "unsupported regime: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
