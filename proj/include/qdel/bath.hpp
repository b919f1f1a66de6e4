// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdel/state.hpp"

namespace qdel {

/// User-facing description of the squeezed thermal bath and the coupling,
/// in units hbar = k_B = 1.
struct BathParams {
    double gamma0 = 0.5;  // system-environment coupling strength, > 0
    double omega = 1.0;   // system frequency, > 0
    double T = 0.0;       // bath temperature, >= 0
    double r = 0.0;       // squeezing magnitude
    double Phi = 0.0;     // squeezing phase, radians
};

inline void validate(const BathParams& p) {
    if (!(p.gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be > 0");
    if (!(p.omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(p.T >= 0.0)) throw std::invalid_argument("T must be >= 0");
    if (!std::isfinite(p.r) || !std::isfinite(p.Phi))
        throw std::invalid_argument("squeezing parameters must be finite");
}

/// Mean thermal photon number 1/(e^{omega/T} - 1). T = 0 is an exact
/// branch, not a limit, so no overflow path exists.
inline double planck_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(T >= 0.0)) throw std::invalid_argument("T must be >= 0");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

/// Scalars the dissipative channel is driven by. decay_plus/decay_minus
/// are the grouped transverse rates (gamma0/2)(2N+1 +- a); they are stored
/// in the factored form (gamma0/2)(2N_th+1)e^{+-2r}, which is what keeps
/// the closed-form evaluation finite: the raw e^{gamma0*a*t} factor in the
/// transverse solution overflows for large r*t even though the physical
/// product decays.
struct EnvConstants {
    BathParams input;      // generating parameters, Phi reduced mod 2*pi
    double n_th = 0.0;     // Planck occupation N_th
    double n_eff = 0.0;    // effective occupation N of the squeezed bath
    double a = 0.0;        // sinh(2r)(2N_th+1)
    double Gamma = 0.0;    // gamma0(2N+1), longitudinal relaxation rate
    double decay_plus = 0.0;
    double decay_minus = 0.0;
};

inline EnvConstants derive_constants(const BathParams& p) {
    validate(p);
    EnvConstants env;
    env.input = p;
    env.input.Phi = std::fmod(p.Phi, 2.0 * kPi);  // convention: radians, reduced to [0, 2*pi)
    if (env.input.Phi < 0.0) env.input.Phi += 2.0 * kPi;
    env.n_th = planck_occupation(p.omega, p.T);
    const double ch = std::cosh(p.r);
    const double sh = std::sinh(p.r);
    env.n_eff = env.n_th * (ch * ch + sh * sh) + sh * sh;
    env.a = std::sinh(2.0 * p.r) * (2.0 * env.n_th + 1.0);
    env.Gamma = p.gamma0 * (2.0 * env.n_eff + 1.0);
    const double base = 0.5 * p.gamma0 * (2.0 * env.n_th + 1.0);
    env.decay_plus = base * std::exp(2.0 * p.r);
    env.decay_minus = base * std::exp(-2.0 * p.r);
    return env;
}

} // namespace qdel
