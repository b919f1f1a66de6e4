// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qdel/bath.hpp"
#include "qdel/dissipative.hpp"
#include "qdel/errors.hpp"
#include "qdel/state.hpp"

namespace qdel {

/// The two Lindblad operators of the dissipative interaction,
///   R1 = sqrt(gamma0 (N_th + 1)/2) R,   R2 = sqrt(gamma0 N_th / 2) R^dag,
///   R  = sigma_- cosh(r) + e^{i Phi} sigma_+ sinh(r),
/// built directly from the raw bath parameters. This path shares nothing
/// with the closed-form solution beyond the Planck occupation, which is
/// what makes the integrator an independent check of it.
struct LindbladGenerator {
    Mat2 r1, r2;
    Mat2 a1, a2;  // precomputed R_j^dag R_j
    bool r2_vanishes = false;

    explicit LindbladGenerator(const BathParams& p) {
        validate(p);
        const double n_th = planck_occupation(p.omega, p.T);
        const cplx phase = std::exp(cplx{0.0, p.Phi});
        const Mat2 r_op = std::cosh(p.r) * sigma_minus() + phase * (std::sinh(p.r) * sigma_plus());
        r1 = std::sqrt(0.5 * p.gamma0 * (n_th + 1.0)) * r_op;
        r2 = std::sqrt(0.5 * p.gamma0 * n_th) * adjoint(r_op);
        a1 = adjoint(r1) * r1;
        a2 = adjoint(r2) * r2;
        r2_vanishes = (n_th == 0.0);  // a single Lindblad operator suffices at T = 0
    }
};

/// Right-hand side sum_j (2 R_j rho R_j^dag - R_j^dag R_j rho - rho R_j^dag R_j).
/// Note the normalization: factor 2 on the sandwich term and a full (not
/// halved) anticommutator. The closed form solves exactly this generator.
inline Mat2 lindblad_rhs(const Mat2& rho, const LindbladGenerator& gen) {
    Mat2 out = 2.0 * (gen.r1 * rho * adjoint(gen.r1)) - gen.a1 * rho - rho * gen.a1;
    if (!gen.r2_vanishes)
        out += 2.0 * (gen.r2 * rho * adjoint(gen.r2)) - gen.a2 * rho - rho * gen.a2;
    return out;
}

inline Mat2 lindblad_rhs(const DensityMatrix& rho, const LindbladGenerator& gen) {
    return lindblad_rhs(rho.m, gen);
}

/// Integration output: every step sample plus the integration metadata.
/// Trace is never renormalized (drift is a measured quantity); hermiticity
/// is restored each step by averaging with the adjoint.
struct Trajectory {
    std::vector<std::pair<double, DensityMatrix>> samples;
    double step_size = 0.0;
    int method_order = 4;
    std::size_t step_count = 0;

    const DensityMatrix& final_state() const { return samples.back().second; }

    double max_trace_drift() const {
        double worst = 0.0;
        for (const auto& [t, rho] : samples)
            worst = std::max(worst, std::abs(trace(rho.m) - cplx{1, 0}));
        return worst;
    }

    double min_eigenvalue() const {
        double worst = 1.0;
        for (const auto& [t, rho] : samples)
            worst = std::min(worst, hermitian_eigenvalues(rho.m)[0]);
        return worst;
    }
};

/// Classical fixed-step 4th-order Runge-Kutta. The requested dt is rounded
/// down to h = t_end/n so the grid lands on t_end exactly; global error is
/// O(h^4).
inline Trajectory integrate(const DensityMatrix& rho0, const LindbladGenerator& gen,
                            double t_end, double dt) {
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");

    Trajectory traj;
    traj.samples.emplace_back(0.0, rho0);
    if (t_end == 0.0) return traj;

    if (!(dt > 0.0 && dt <= t_end))
        throw std::invalid_argument("dt must satisfy 0 < dt <= t_end");

    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(n);
    traj.step_size = h;
    traj.step_count = n;
    traj.samples.reserve(n + 1);

    Mat2 rho = rho0.m;
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2 k1 = lindblad_rhs(rho, gen);
        const Mat2 k2 = lindblad_rhs(rho + (0.5 * h) * k1, gen);
        const Mat2 k3 = lindblad_rhs(rho + (0.5 * h) * k2, gen);
        const Mat2 k4 = lindblad_rhs(rho + h * k3, gen);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + adjoint(rho));
        if (!is_finite(rho))
            throw numerical_failure("integration produced non-finite entries",
                                    static_cast<long>(k));
        traj.samples.emplace_back(static_cast<double>(k + 1) * h, DensityMatrix{rho});
    }
    return traj;
}

/// Closed-form vs integrator comparison over a time grid.
struct ComparisonPoint {
    double t = 0.0;
    double err_sx = 0.0, err_sy = 0.0, err_sz = 0.0;
    double trace_drift = 0.0;
    double min_eigenvalue = 1.0;
};

struct ComparisonReport {
    std::vector<ComparisonPoint> points;
    double max_err = 0.0;          // max componentwise |closed form - RK4| over the grid
    double max_trace_drift = 0.0;  // over the whole trajectory
    double min_eigenvalue = 1.0;   // over the whole trajectory
    std::size_t positivity_violations = 0;  // trajectory samples with eig < -1e-9
    double dt_requested = 0.0;
    double step_size = 0.0;
    std::size_t step_count = 0;
};

inline ComparisonReport compare_closed_form(const BlochVector& b0, const BathParams& p,
                                            const std::vector<double>& t_grid, double dt) {
    if (t_grid.empty()) throw std::invalid_argument("comparison grid must be non-empty");
    for (double t : t_grid)
        if (!(t >= 0.0)) throw std::invalid_argument("comparison grid times must be >= 0");

    const EnvConstants env = derive_constants(p);
    const LindbladGenerator gen(p);
    const DensityMatrix rho0 = bloch_to_density(b0);
    const double t_end = *std::max_element(t_grid.begin(), t_grid.end());
    const Trajectory traj = integrate(rho0, gen, t_end, t_end > 0.0 ? dt : 1.0);

    ComparisonReport report;
    report.dt_requested = dt;
    report.step_size = traj.step_size;
    report.step_count = traj.step_count;
    report.max_trace_drift = traj.max_trace_drift();
    report.min_eigenvalue = traj.min_eigenvalue();
    for (const auto& [t, rho] : traj.samples)
        if (hermitian_eigenvalues(rho.m)[0] < -kNumericTol) ++report.positivity_violations;

    for (double t_req : t_grid) {
        // Compare at the integrator's own sample time nearest the request;
        // the closed form is exact in t, so no interpolation error enters.
        std::size_t idx = 0;
        if (traj.step_size > 0.0) {
            idx = static_cast<std::size_t>(std::llround(t_req / traj.step_size));
            idx = std::min(idx, traj.samples.size() - 1);
        }
        const auto& [t, rho] = traj.samples[idx];
        const Mat2& m = rho.m;
        const BlochVector numeric{2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
                                  m(0, 0).real() - m(1, 1).real()};
        const BlochVector closed = evolve_bloch(b0, env, t);

        ComparisonPoint pt;
        pt.t = t;
        pt.err_sx = std::abs(closed.sx - numeric.sx);
        pt.err_sy = std::abs(closed.sy - numeric.sy);
        pt.err_sz = std::abs(closed.sz - numeric.sz);
        pt.trace_drift = std::abs(trace(m) - cplx{1, 0});
        pt.min_eigenvalue = hermitian_eigenvalues(m)[0];
        report.points.push_back(pt);
        report.max_err = std::max({report.max_err, pt.err_sx, pt.err_sy, pt.err_sz});
    }
    return report;
}

/// Completeness check for a Kraus set: residual = max entry of
/// |sum K^dag K - I|, verdict pass iff residual <= 1e-12.
struct CptpReport {
    double residual = 0.0;
    bool pass = false;
};

inline CptpReport validate_cptp(const KrausSet& k) {
    CptpReport report;
    report.residual = completeness_residual(k);
    report.pass = report.residual <= kExactTol;
    return report;
}

} // namespace qdel
