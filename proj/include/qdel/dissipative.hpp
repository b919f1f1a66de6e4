// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qdel/bath.hpp"
#include "qdel/errors.hpp"
#include "qdel/state.hpp"

namespace qdel {

/// Closed-form dissipative evolution of a Bloch vector for time t >= 0.
///
/// Longitudinal: <s3(t)> = e^{-Gamma t} <s3(0)> - (1 - e^{-Gamma t})/(2N+1).
/// Transverse: the cosh/sinh(gamma0*a*t/2) factors and their decaying
/// envelope are regrouped into pure decays e^{-decay_minus t} and
/// e^{-decay_plus t}, so no intermediate can overflow for any r, t.
inline BlochVector evolve_bloch(const BlochVector& b0, const EnvConstants& env, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");

    const double em = std::exp(-env.decay_minus * t);
    const double ep = std::exp(-env.decay_plus * t);
    const double ch = 0.5 * (em + ep);  // cosh(gamma0 a t/2) * e^{-Gamma t/2}
    const double sh = 0.5 * (em - ep);  // sinh(gamma0 a t/2) * e^{-Gamma t/2}
    const double cphi = std::cos(env.input.Phi);
    const double sphi = std::sin(env.input.Phi);
    const double eg = std::exp(-env.Gamma * t);
    const double two_n_plus_1 = 2.0 * env.n_eff + 1.0;

    BlochVector b;
    b.sx = (ch + cphi * sh) * b0.sx - sphi * sh * b0.sy;
    b.sy = -sphi * sh * b0.sx + (ch - cphi * sh) * b0.sy;
    b.sz = eg * b0.sz + std::expm1(-env.Gamma * t) / two_n_plus_1;

    if (!std::isfinite(b.sx) || !std::isfinite(b.sy) || !std::isfinite(b.sz))
        throw numerical_failure("evolve_bloch produced a non-finite component");
    return b;
}

/// Time derivative of the Bloch vector at time t (analytic, from the same
/// exponent groupings). Used by the contraction diagnostic and by
/// finite-difference cross-checks.
inline BlochVector bloch_velocity(const BlochVector& b0, const EnvConstants& env, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");
    const double em = std::exp(-env.decay_minus * t);
    const double ep = std::exp(-env.decay_plus * t);
    const double dch = 0.5 * (-env.decay_minus * em - env.decay_plus * ep);
    const double dsh = 0.5 * (-env.decay_minus * em + env.decay_plus * ep);
    const double cphi = std::cos(env.input.Phi);
    const double sphi = std::sin(env.input.Phi);
    const double eg = std::exp(-env.Gamma * t);

    BlochVector v;
    v.sx = (dch + cphi * dsh) * b0.sx - sphi * dsh * b0.sy;
    v.sy = -sphi * dsh * b0.sx + (dch - cphi * dsh) * b0.sy;
    v.sz = -env.Gamma * eg * b0.sz - env.Gamma * eg / (2.0 * env.n_eff + 1.0);
    return v;
}

/// r . dr/dt at t = 0; negative for every pure state except |0> when N = 0.
inline double initial_contraction_rate(const BlochVector& b0, const EnvConstants& env) {
    const BlochVector v = bloch_velocity(b0, env, 0.0);
    return b0.sx * v.sx + b0.sy * v.sy + b0.sz * v.sz;
}

/// Ground-state population p of the asymptotic equilibrium state
/// diag(1-p, p); p = (1 + 1/(2N+1))/2.
struct AsymptoticState {
    double p = 1.0;
};

inline AsymptoticState asymptotic_state(const EnvConstants& env) {
    return {0.5 * (1.0 + 1.0 / (2.0 * env.n_eff + 1.0))};
}

inline DensityMatrix to_density(const AsymptoticState& s) {
    Mat2 m;
    m(0, 0) = cplx{1.0 - s.p, 0.0};
    m(1, 1) = cplx{s.p, 0.0};
    return {m};
}

/// Fidelity to the blank state |0> after evolving from <sigma3(0)> = sz0:
/// f(t) = sqrt((1 - e^{-Gamma t} sz0 + (1 - e^{-Gamma t})/(2N+1)) / 2).
inline double fidelity_law(double sz0, const EnvConstants& env, double t) {
    if (!(sz0 >= -1.0 && sz0 <= 1.0))
        throw std::invalid_argument("sz0 must lie in [-1, 1]");
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");
    const double eg = std::exp(-env.Gamma * t);
    const double zt = eg * sz0 + std::expm1(-env.Gamma * t) / (2.0 * env.n_eff + 1.0);
    return std::sqrt(0.5 * (1.0 - zt));
}

/// State-independent lower bound (the sz0 = 1 worst case):
/// f(t) >= sqrt((1 - e^{-Gamma t})(1 + 1/(2N+1)) / 2).
inline double fidelity_lower_bound(const EnvConstants& env, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");
    const double one_minus_eg = -std::expm1(-env.Gamma * t);
    return std::sqrt(0.5 * one_minus_eg * (1.0 + 1.0 / (2.0 * env.n_eff + 1.0)));
}

/// Operator-sum representation of a channel: matrices K_k with
/// sum_k K_k^dag K_k = I, stamped with the generating time/parameters.
struct KrausSet {
    std::vector<Mat2> ops;
    double time = 0.0;
    std::optional<BathParams> params;
};

inline double completeness_residual(const KrausSet& k) {
    Mat2 sum;
    for (const Mat2& op : k.ops) sum += adjoint(op) * op;
    return max_abs_diff(sum, Mat2::identity());
}

/// Generalized amplitude damping Kraus set for the unsqueezed (r = 0)
/// channel, with damping lambda = 1 - e^{-Gamma t} and mixing q = p of the
/// asymptotic state. At T = 0 the (1-q)-weighted pair vanishes, leaving
/// plain amplitude damping. Operators that vanish identically are dropped.
inline KrausSet gad_kraus(const EnvConstants& env, double t) {
    if (env.input.r != 0.0)
        throw unsupported_regime(
            "no generalized-amplitude-damping Kraus form for r != 0; "
            "use evolve_bloch or the Lindblad integrator");
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");

    const double lambda = -std::expm1(-env.Gamma * t);
    const double q = asymptotic_state(env).p;
    const double rq = std::sqrt(q);
    const double rnq = std::sqrt(1.0 - q);
    const double rl = std::sqrt(lambda);
    const double rnl = std::sqrt(1.0 - lambda);

    KrausSet set;
    set.time = t;
    set.params = env.input;
    auto push_nonzero = [&set](const Mat2& op) {
        if (max_abs(op) > 0.0) set.ops.push_back(op);
    };
    push_nonzero({{cplx{rq * rnl, 0}, {}, {}, cplx{rq, 0}}});        // sqrt(q) diag(sqrt(1-l), 1)
    push_nonzero({{cplx{}, {}, cplx{rq * rl, 0}, {}}});              // sqrt(q*l) |0><1|
    push_nonzero({{cplx{rnq, 0}, {}, {}, cplx{rnq * rnl, 0}}});      // sqrt(1-q) diag(1, sqrt(1-l))
    push_nonzero({{cplx{}, cplx{rnq * rl, 0}, {}, {}}});             // sqrt((1-q)*l) |1><0|
    return set;
}

/// sum_k K rho K^dag. Requires a complete set; the output is validated.
inline DensityMatrix apply_kraus(const KrausSet& k, const DensityMatrix& rho) {
    if (completeness_residual(k) > kExactTol)
        throw std::invalid_argument("Kraus set does not satisfy the completeness relation");
    Mat2 out;
    for (const Mat2& op : k.ops) out += op * rho.m * adjoint(op);
    validate_density(out, kNumericTol, kNumericTol);
    return {out};
}

} // namespace qdel
