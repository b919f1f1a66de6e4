// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdel/state.hpp"

namespace qdel {

/// Time-dependent dephasing data. gamma(t) is the decoherence exponent
/// (dimensionless, >= 0, gamma(0) = 0) and eta(t) the Lamb-type phase
/// exponent. Both are pluggable: their closed forms depend on the bath
/// spectral density, which this library does not model. The built-in
/// models below are placeholders for exercising the channel, not derived
/// physics; real applications should supply their own.
struct DephasingKernel {
    std::function<double(double)> eta;
    std::function<double(double)> gamma;
    std::string name;

    double eval_gamma(double t) const {
        const double g = gamma(t);
        if (!std::isfinite(g) || g < 0.0)
            throw std::invalid_argument("kernel '" + name + "': gamma(t) must be finite and >= 0");
        return g;
    }

    double eval_eta(double t) const {
        const double e = eta(t);
        if (!std::isfinite(e))
            throw std::invalid_argument("kernel '" + name + "': eta(t) must be finite");
        return e;
    }
};

/// Checks the structural requirements that can be probed pointwise:
/// gamma(0) = 0 (no decoherence before the interaction acts) and
/// finiteness at t = 0. Positivity at later times is enforced lazily
/// by eval_gamma.
inline void validate(const DephasingKernel& k) {
    if (!k.eta || !k.gamma)
        throw std::invalid_argument("kernel '" + k.name + "': eta and gamma must be callable");
    if (std::abs(k.eval_gamma(0.0)) > kExactTol)
        throw std::invalid_argument("kernel '" + k.name + "': gamma(0) must be 0");
}

inline DephasingKernel builtin_kernel(const std::string& name, double kappa = 0.1,
                                      double tau = 1.0) {
    const auto zero_fn = [](double) { return 0.0; };
    if (name == "zero")
        return {zero_fn, zero_fn, name};
    if (name == "linear") {
        if (!(kappa >= 0.0)) throw std::invalid_argument("kernel 'linear': kappa must be >= 0");
        return {zero_fn, [kappa](double t) { return kappa * t; }, name};
    }
    if (name == "quadratic-saturating") {
        if (!(kappa >= 0.0))
            throw std::invalid_argument("kernel 'quadratic-saturating': kappa must be >= 0");
        if (!(tau > 0.0))
            throw std::invalid_argument("kernel 'quadratic-saturating': tau must be > 0");
        return {zero_fn, [kappa, tau](double t) { return kappa * t * t / (1.0 + t / tau); }, name};
    }
    throw std::invalid_argument("unknown kernel '" + name +
                                "' (known: zero, linear, quadratic-saturating)");
}

/// Eigenvalues of the system Hamiltonian, hbar = 1. The qubit case is
/// {+omega/2, -omega/2} listed in the (|1>, |0>) basis order used by Mat2.
struct EnergyLevels {
    std::vector<double> values;
};

inline void validate(const EnergyLevels& lv) {
    if (lv.values.size() < 2)
        throw std::invalid_argument("EnergyLevels: need at least 2 levels");
    for (double e : lv.values)
        if (!std::isfinite(e)) throw std::invalid_argument("EnergyLevels: values must be finite");
}

inline EnergyLevels qubit_levels(double omega) {
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    return {{0.5 * omega, -0.5 * omega}};
}

/// Dense complex square matrix for the general N-level dephasing map.
/// Deliberately minimal: the channel only ever scales entries in place.
struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<cplx> a;

    explicit ComplexMatrix(std::size_t dim) : n(dim), a(dim * dim) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline ComplexMatrix to_complex_matrix(const Mat2& m) {
    ComplexMatrix out(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(i, j);
    return out;
}

/// Dephasing map for any Hamiltonian diagonal in the given eigenbasis:
///   rho_nm(t) = exp(-i(E_n - E_m)t) exp(i(E_n^2 - E_m^2) eta(t))
///               exp(-(E_n - E_m)^2 gamma(t)) rho_nm(0).
/// Only the eigenvalues enter. Diagonal entries are copied verbatim, not
/// multiplied by a unit factor, so populations are preserved to the bit.
inline ComplexMatrix qnd_evolve_general(const ComplexMatrix& rho0, const EnergyLevels& levels,
                                        const DephasingKernel& k, double t) {
    validate(levels);
    validate(k);
    if (rho0.n != levels.values.size())
        throw std::invalid_argument("rho0 dimension must equal the number of energy levels");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");

    const double g = k.eval_gamma(t);
    const double e = k.eval_eta(t);

    ComplexMatrix out(rho0.n);
    for (std::size_t n = 0; n < rho0.n; ++n) {
        for (std::size_t m = 0; m < rho0.n; ++m) {
            if (n == m) {
                out(n, m) = rho0(n, m);
                continue;
            }
            const double dE = levels.values[n] - levels.values[m];
            const double dE2 = levels.values[n] * levels.values[n] -
                               levels.values[m] * levels.values[m];
            const cplx factor = std::exp(cplx{-dE * dE * g, -dE * t + dE2 * e});
            out(n, m) = factor * rho0(n, m);
        }
    }
    return out;
}

/// Qubit specialization in Bloch form:
///   (sin th0 cos(w t + ph0) e^{-w^2 g(t)},
///    sin th0 sin(w t + ph0) e^{-w^2 g(t)},
///    cos th0).
/// Sign convention: with levels (+w/2, -w/2) in the (|1>, |0>) ordering,
/// the <1|rho|0> entry is (sx - i sy)/2 and picks up e^{-i w t}, which is
/// exactly a +w t advance of the transverse phase. The general and qubit
/// paths therefore agree without any per-call sign fixups (tested).
inline BlochVector qnd_evolve_qubit(const InitialAngles& angles, double omega,
                                    const DephasingKernel& k, double t) {
    validate(angles);
    validate(k);
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");

    const double g = k.eval_gamma(t);
    const double shrink = std::exp(-omega * omega * g);
    const double transverse = std::sin(angles.theta0) * shrink;
    return {transverse * std::cos(omega * t + angles.phi0),
            transverse * std::sin(omega * t + angles.phi0), std::cos(angles.theta0)};
}

/// Same map applied to an arbitrary (possibly mixed) qubit state.
inline BlochVector qnd_evolve_bloch(const BlochVector& b0, double omega,
                                    const DephasingKernel& k, double t) {
    validate(k);
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");

    const double g = k.eval_gamma(t);
    const double shrink = std::exp(-omega * omega * g);
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return {shrink * (c * b0.sx - s * b0.sy), shrink * (s * b0.sx + c * b0.sy), b0.sz};
}

} // namespace qdel
