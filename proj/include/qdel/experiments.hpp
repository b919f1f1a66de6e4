// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdel/bath.hpp"
#include "qdel/dissipative.hpp"
#include "qdel/lindblad.hpp"
#include "qdel/qnd.hpp"
#include "qdel/state.hpp"
#include "qdel/version.hpp"

namespace qdel {

enum class Channel { dissipative, qnd };

inline std::string channel_name(Channel c) {
    return c == Channel::dissipative ? "dissipative" : "qnd";
}

/// One experiment description, shared by every subcommand. The dissipative
/// path reads the bath block; the qnd path reads the kernel block; both read
/// the initial state and the time grid.
struct RunConfig {
    Channel channel = Channel::dissipative;
    BathParams bath;

    std::string kernel = "zero";
    double kappa = 0.1;
    double tau = 1.0;

    InitialAngles angles;  // ignored when mixed
    bool mixed = false;

    double t_max = 30.0;
    int n_points = 601;

    double dt = 1e-3;   // oracle integrator step (check)
    double tol = 1e-6;  // closed-form agreement tolerance (check)
};

inline void validate(const RunConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
    if (cfg.n_points < 2) throw std::invalid_argument("n_points must be >= 2");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (cfg.channel == Channel::dissipative) validate(cfg.bath);
    if (!cfg.mixed) validate(cfg.angles);
}

/// Uniform grid over [0, t_max] with both endpoints included.
inline std::vector<double> uniform_grid(double t_max, int n_points) {
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k)
        grid[static_cast<std::size_t>(k)] =
            t_max * static_cast<double>(k) / static_cast<double>(n_points - 1);
    grid.back() = t_max;  // guard the endpoint against rounding
    return grid;
}

inline BlochVector initial_bloch(const RunConfig& cfg) {
    if (cfg.mixed) return {0.0, 0.0, 0.0};  // maximally mixed, the sphere's center
    return pure_state_from_angles(cfg.angles);
}

/// One output row of an evolution: the Bloch components plus the derived
/// scalars every experiment reports.
struct EvolveRow {
    double t = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;
    double length = 0.0;
    double purity = 0.0;
    double fidelity_blank = 0.0;
};

inline EvolveRow make_row(double t, const BlochVector& b) {
    const double len = bloch_length(b);
    return {t,   b.sx, b.sy, b.sz, len, 0.5 * (1.0 + len * len),
            std::sqrt(std::max(0.0, 0.5 * (1.0 - b.sz)))};
}

inline std::vector<EvolveRow> run_evolve(const RunConfig& cfg) {
    validate(cfg);
    const BlochVector b0 = initial_bloch(cfg);
    const std::vector<double> grid = uniform_grid(cfg.t_max, cfg.n_points);

    std::vector<EvolveRow> rows;
    rows.reserve(grid.size());
    if (cfg.channel == Channel::dissipative) {
        const EnvConstants env = derive_constants(cfg.bath);
        for (double t : grid) rows.push_back(make_row(t, evolve_bloch(b0, env, t)));
    } else {
        const DephasingKernel k = builtin_kernel(cfg.kernel, cfg.kappa, cfg.tau);
        for (double t : grid)
            rows.push_back(make_row(t, qnd_evolve_bloch(b0, cfg.bath.omega, k, t)));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Figure datasets
// ---------------------------------------------------------------------------

struct Series {
    std::string label;  // no commas: labels land in a CSV column
    std::vector<std::pair<double, double>> points;
};

struct FigureDataset {
    std::string id;
    std::string abscissa;  // column name of the x quantity
    std::string ordinate;  // column name of the y quantity
    std::vector<std::pair<std::string, std::string>> params;  // generating parameter set
    std::vector<std::string> notes;  // assumption and override remarks, one comment line each
    std::vector<Series> curves;
};

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Shortened form for curve labels, where "r=-0.4" reads better than the
/// 17-digit round-trip spelling. Data columns always use format_number.
inline std::string format_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Bloch-length relaxation curves: three pure initial states plus the
/// maximally mixed one, bath at T = 0 with no squeezing. The pure theta0 = 0
/// curve collapses to length zero at t = ln(2)/gamma0 and every curve climbs
/// back to 1 as the state settles into the blank state.
inline FigureDataset make_fig1(double gamma0 = 0.5, double omega = 1.0, double t_max = 30.0,
                               int n_points = 601) {
    const BathParams bath{gamma0, omega, 0.0, 0.0, 0.0};
    const EnvConstants env = derive_constants(bath);
    const std::vector<double> grid = uniform_grid(t_max, n_points);

    FigureDataset fig;
    fig.id = "fig1";
    fig.abscissa = "t";
    fig.ordinate = "bloch_length";
    fig.params = {{"gamma0", format_number(gamma0)}, {"omega", format_number(omega)},
                  {"T", "0"},                        {"r", "0"},
                  {"Phi", "0"},                      {"t_max", format_number(t_max)},
                  {"n_points", std::to_string(n_points)}};
    fig.notes = {"assumed: phi0=0 for the pure-state curves (length is phi0-independent at r=0)"};

    const std::vector<std::pair<std::string, double>> pure_curves = {
        {"theta0=0", 0.0}, {"theta0=pi/8", kPi / 8.0}, {"theta0=pi/4", kPi / 4.0}};
    for (const auto& [label, theta0] : pure_curves) {
        Series s{label, {}};
        const BlochVector b0 = pure_state_from_angles({theta0, 0.0});
        for (double t : grid) s.points.emplace_back(t, bloch_length(evolve_bloch(b0, env, t)));
        fig.curves.push_back(std::move(s));
    }
    Series mixed{"mixed", {}};
    for (double t : grid)
        mixed.points.emplace_back(t, bloch_length(evolve_bloch({0, 0, 0}, env, t)));
    fig.curves.push_back(std::move(mixed));
    return fig;
}

/// Deletion fidelity of the excited state versus bath temperature at a fixed
/// readout time. The grid is the exact T = 0 branch point followed by
/// log-spaced temperatures; log spacing resolves the knee near T ~ omega
/// that a linear grid of the same size would blur.
inline FigureDataset make_fig2(double gamma0 = 0.5, double omega = 1.0, double t_eval = 10.0,
                               int n_temps = 200, double temp_min = 0.01,
                               double temp_max = 20.0) {
    if (!(temp_min > 0.0) || !(temp_max > temp_min))
        throw std::invalid_argument("fig2 temperature grid requires 0 < temp_min < temp_max");
    if (n_temps < 2) throw std::invalid_argument("fig2 requires n_temps >= 2");
    if (!(t_eval >= 0.0)) throw std::invalid_argument("t_eval must be >= 0");

    FigureDataset fig;
    fig.id = "fig2";
    fig.abscissa = "T";
    fig.ordinate = "fidelity_blank";
    fig.params = {{"theta0", "0"},
                  {"gamma0", format_number(gamma0)},
                  {"omega", format_number(omega)},
                  {"t", format_number(t_eval)},
                  {"n_temps", std::to_string(n_temps)},
                  {"temp_min", format_number(temp_min)},
                  {"temp_max", format_number(temp_max)}};
    fig.notes = {"temperature grid: exact T=0 point, then log-spaced over [temp_min, temp_max]"};

    Series s{"theta0=0", {}};
    const double ratio = temp_max / temp_min;
    std::vector<double> temps{0.0};
    for (int i = 0; i < n_temps; ++i)
        temps.push_back(temp_min *
                        std::pow(ratio, static_cast<double>(i) / static_cast<double>(n_temps - 1)));
    for (double temp : temps) {
        const EnvConstants env = derive_constants({gamma0, omega, temp, 0.0, 0.0});
        s.points.emplace_back(temp, fidelity_law(1.0, env, t_eval));
    }
    fig.curves.push_back(std::move(s));
    return fig;
}

/// Bloch-length curves under a squeezed bath at T = 0: two squeezing
/// strengths crossed with a mixed and a pure initial state. Squeezing keeps
/// the stationary state strictly mixed, so no curve returns to length 1.
inline FigureDataset make_fig3(double gamma0 = 0.6, double omega = 1.0, double t_max = 30.0,
                               int n_points = 601, double Phi = 0.0) {
    const std::vector<double> grid = uniform_grid(t_max, n_points);

    FigureDataset fig;
    fig.id = "fig3";
    fig.abscissa = "t";
    fig.ordinate = "bloch_length";
    fig.params = {{"gamma0", format_number(gamma0)}, {"omega", format_number(omega)},
                  {"T", "0"},                        {"Phi", format_number(Phi)},
                  {"t_max", format_number(t_max)},   {"n_points", std::to_string(n_points)}};
    if (Phi == 0.0)
        fig.notes = {"assumed: Phi=0 (not fixed by the scenario; override with --squeeze-phi)"};
    fig.notes.push_back("assumed: phi0=0 for the pure-state curves");

    const BlochVector pure = pure_state_from_angles({kPi / 4.0, 0.0});
    for (double r : {0.2, -0.4}) {
        const EnvConstants env = derive_constants({gamma0, omega, 0.0, r, Phi});
        const std::string rlabel = "r=" + format_label(r);
        Series m{rlabel + " mixed", {}};
        Series p{rlabel + " theta0=pi/4", {}};
        for (double t : grid) {
            m.points.emplace_back(t, bloch_length(evolve_bloch({0, 0, 0}, env, t)));
            p.points.emplace_back(t, bloch_length(evolve_bloch(pure, env, t)));
        }
        fig.curves.push_back(std::move(m));
        fig.curves.push_back(std::move(p));
    }
    return fig;
}

inline FigureDataset make_figure(const std::string& id) {
    if (id == "fig1") return make_fig1();
    if (id == "fig2") return make_fig2();
    if (id == "fig3") return make_fig3();
    throw std::invalid_argument("unknown figure id '" + id + "' (known: fig1, fig2, fig3)");
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis { gamma0, T, r, Phi, t };

inline SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "gamma0") return SweepAxis::gamma0;
    if (name == "T") return SweepAxis::T;
    if (name == "r") return SweepAxis::r;
    if (name == "Phi") return SweepAxis::Phi;
    if (name == "t") return SweepAxis::t;
    throw std::invalid_argument("unknown sweep axis '" + name +
                                "' (known: gamma0, T, r, Phi, t)");
}

inline std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::gamma0: return "gamma0";
        case SweepAxis::T: return "T";
        case SweepAxis::r: return "r";
        case SweepAxis::Phi: return "Phi";
        case SweepAxis::t: return "t";
    }
    return "?";
}

struct SweepSpec {
    SweepAxis axis = SweepAxis::T;
    double min = 0.0;
    double max = 1.0;
    int steps = 2;  // number of rows, endpoints included
};

inline void validate(const SweepSpec& spec) {
    if (!(spec.min < spec.max)) throw std::invalid_argument("sweep requires min < max");
    if (spec.steps < 2) throw std::invalid_argument("sweep steps must be >= 2");
}

struct SweepRow {
    double axis_value = 0.0;
    EvolveRow row;
};

/// One evolution per axis value, everything else held at the config values.
/// Bath axes move a bath parameter and report the state at t_max; the t axis
/// reports the trajectory itself. Rows come out in ascending axis order.
inline std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& spec) {
    validate(cfg);
    validate(spec);
    if (cfg.channel != Channel::dissipative && spec.axis != SweepAxis::t)
        throw std::invalid_argument("sweep axis '" + sweep_axis_name(spec.axis) +
                                    "' applies to the dissipative channel only");

    const BlochVector b0 = initial_bloch(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));

    if (spec.axis == SweepAxis::t) {
        if (cfg.channel == Channel::dissipative) {
            const EnvConstants env = derive_constants(cfg.bath);
            for (int i = 0; i < spec.steps; ++i) {
                const double t = spec.min + (spec.max - spec.min) * static_cast<double>(i) /
                                                static_cast<double>(spec.steps - 1);
                rows.push_back({t, make_row(t, evolve_bloch(b0, env, t))});
            }
        } else {
            const DephasingKernel k = builtin_kernel(cfg.kernel, cfg.kappa, cfg.tau);
            for (int i = 0; i < spec.steps; ++i) {
                const double t = spec.min + (spec.max - spec.min) * static_cast<double>(i) /
                                                static_cast<double>(spec.steps - 1);
                rows.push_back({t, make_row(t, qnd_evolve_bloch(b0, cfg.bath.omega, k, t))});
            }
        }
        return rows;
    }

    for (int i = 0; i < spec.steps; ++i) {
        const double v = spec.min + (spec.max - spec.min) * static_cast<double>(i) /
                                        static_cast<double>(spec.steps - 1);
        BathParams bath = cfg.bath;
        switch (spec.axis) {
            case SweepAxis::gamma0: bath.gamma0 = v; break;
            case SweepAxis::T: bath.T = v; break;
            case SweepAxis::r: bath.r = v; break;
            case SweepAxis::Phi: bath.Phi = v; break;
            case SweepAxis::t: break;  // unreachable, handled above
        }
        const EnvConstants env = derive_constants(bath);
        rows.push_back({v, make_row(cfg.t_max, evolve_bloch(b0, env, cfg.t_max))});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// CSV rendering. One code path builds every file so determinism is a single
// property: identical inputs produce identical strings. Numbers use %.17g
// (round-trip exact for doubles), comments start with '#'.
// ---------------------------------------------------------------------------

inline void append_config_comments(std::string& out, const RunConfig& cfg) {
    out += "# channel=" + channel_name(cfg.channel) + "\n";
    if (cfg.channel == Channel::dissipative) {
        out += "# gamma0=" + format_number(cfg.bath.gamma0) +
               " omega=" + format_number(cfg.bath.omega) + " T=" + format_number(cfg.bath.T) +
               " r=" + format_number(cfg.bath.r) + " Phi=" + format_number(cfg.bath.Phi) + "\n";
    } else {
        out += "# kernel=" + cfg.kernel + " kappa=" + format_number(cfg.kappa) +
               " tau=" + format_number(cfg.tau) + " omega=" + format_number(cfg.bath.omega) +
               "\n";
    }
    if (cfg.mixed)
        out += "# initial=mixed\n";
    else
        out += "# theta0=" + format_number(cfg.angles.theta0) +
               " phi0=" + format_number(cfg.angles.phi0) + "\n";
    out += "# t_max=" + format_number(cfg.t_max) + " n_points=" + std::to_string(cfg.n_points) +
           "\n";
}

inline std::string render_evolve_csv(const RunConfig& cfg, const std::vector<EvolveRow>& rows,
                                     const std::vector<std::string>& extra_comments = {}) {
    std::string out = "# artifact_version=";
    out += kVersion;
    out += "\n# command=evolve\n";
    append_config_comments(out, cfg);
    for (const auto& c : extra_comments) out += "# " + c + "\n";
    out += "t,sx,sy,sz,bloch_length,purity,fidelity_blank\n";
    for (const auto& r : rows) {
        out += format_number(r.t) + "," + format_number(r.sx) + "," + format_number(r.sy) + "," +
               format_number(r.sz) + "," + format_number(r.length) + "," +
               format_number(r.purity) + "," + format_number(r.fidelity_blank) + "\n";
    }
    return out;
}

inline std::string render_figure_csv(const FigureDataset& fig,
                                     const std::vector<std::string>& extra_comments = {}) {
    std::string out = "# artifact_version=";
    out += kVersion;
    out += "\n# figure=" + fig.id + "\n";
    for (const auto& [key, value] : fig.params) out += "# " + key + "=" + value + "\n";
    for (const auto& note : fig.notes) out += "# " + note + "\n";
    for (const auto& c : extra_comments) out += "# " + c + "\n";
    out += "curve," + fig.abscissa + "," + fig.ordinate + "\n";
    for (const auto& s : fig.curves)
        for (const auto& [x, y] : s.points)
            out += s.label + "," + format_number(x) + "," + format_number(y) + "\n";
    return out;
}

inline std::string render_sweep_csv(const RunConfig& cfg, const SweepSpec& spec,
                                    const std::vector<SweepRow>& rows,
                                    const std::vector<std::string>& extra_comments = {}) {
    std::string out = "# artifact_version=";
    out += kVersion;
    out += "\n# command=sweep\n";
    append_config_comments(out, cfg);
    out += "# axis=" + sweep_axis_name(spec.axis) + " min=" + format_number(spec.min) +
           " max=" + format_number(spec.max) + " steps=" + std::to_string(spec.steps) + "\n";
    for (const auto& c : extra_comments) out += "# " + c + "\n";

    const bool time_axis = spec.axis == SweepAxis::t;
    if (!time_axis)
        out += "# evaluated at t=" + format_number(cfg.t_max) + "\n";
    out += (time_axis ? std::string("t") : sweep_axis_name(spec.axis)) +
           ",sx,sy,sz,bloch_length,purity,fidelity_blank\n";
    for (const auto& r : rows) {
        out += format_number(r.axis_value) + "," + format_number(r.row.sx) + "," +
               format_number(r.row.sy) + "," + format_number(r.row.sz) + "," +
               format_number(r.row.length) + "," + format_number(r.row.purity) + "," +
               format_number(r.row.fidelity_blank) + "\n";
    }
    return out;
}

inline std::string render_check_csv(const RunConfig& cfg, const ComparisonReport& report,
                                    const std::vector<std::string>& extra_comments = {}) {
    std::string out = "# artifact_version=";
    out += kVersion;
    out += "\n# command=check\n";
    append_config_comments(out, cfg);
    out += "# dt_requested=" + format_number(report.dt_requested) +
           " step_size=" + format_number(report.step_size) +
           " steps=" + std::to_string(report.step_count) + "\n";
    out += "# max_err=" + format_number(report.max_err) +
           " max_trace_drift=" + format_number(report.max_trace_drift) +
           " min_eigenvalue=" + format_number(report.min_eigenvalue) +
           " positivity_violations=" + std::to_string(report.positivity_violations) + "\n";
    for (const auto& c : extra_comments) out += "# " + c + "\n";
    out += "t,err_sx,err_sy,err_sz,trace_drift,min_eigenvalue\n";
    for (const auto& p : report.points) {
        out += format_number(p.t) + "," + format_number(p.err_sx) + "," +
               format_number(p.err_sy) + "," + format_number(p.err_sz) + "," +
               format_number(p.trace_drift) + "," + format_number(p.min_eigenvalue) + "\n";
    }
    return out;
}

/// The check subcommand's work: integrate the master equation over the
/// config grid and compare against the closed form at every grid time.
inline ComparisonReport run_check(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.channel != Channel::dissipative)
        throw std::invalid_argument("check applies to the dissipative channel only");
    return compare_closed_form(initial_bloch(cfg), cfg.bath, uniform_grid(cfg.t_max, cfg.n_points),
                               cfg.dt);
}

} // namespace qdel
