// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdel/mat2.hpp"

namespace qdel {

// Global tolerance policy: 1e-12 for exact-algebra identities, 1e-9 as
// slack for accumulated numerics.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kNumericTol = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

/// Pauli expectation values (<sigma1>, <sigma2>, <sigma3>) of a qubit state.
/// |b| <= 1 (+ slack), with equality for pure states.
struct BlochVector {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
};

inline double bloch_length(const BlochVector& b) {
    return std::sqrt(b.sx * b.sx + b.sy * b.sy + b.sz * b.sz);
}

/// Polar/azimuthal parameterization of a pure state,
/// cos(theta0/2)|1> + e^{i phi0} sin(theta0/2)|0>.
/// theta0 = 0 is the excited pole |1>, theta0 = pi the blank pole |0>.
struct InitialAngles {
    double theta0 = 0.0;  // [0, pi]
    double phi0 = 0.0;    // [0, 2*pi)
};

inline void validate(const InitialAngles& angles) {
    if (!(angles.theta0 >= 0.0 && angles.theta0 <= kPi))
        throw std::invalid_argument("theta0 must lie in [0, pi], got " +
                                    std::to_string(angles.theta0));
    if (!(angles.phi0 >= 0.0 && angles.phi0 < 2.0 * kPi))
        throw std::invalid_argument("phi0 must lie in [0, 2*pi), got " +
                                    std::to_string(angles.phi0));
}

inline BlochVector pure_state_from_angles(const InitialAngles& angles) {
    validate(angles);
    const double st = std::sin(angles.theta0);
    return {st * std::cos(angles.phi0), st * std::sin(angles.phi0), std::cos(angles.theta0)};
}

/// 2x2 density matrix in the ordered basis (|1>, |0>). Kept as a thin
/// wrapper; the validating operations below are the error surface.
struct DensityMatrix {
    Mat2 m;
};

inline double hermiticity_defect(const DensityMatrix& rho) { return hermiticity_defect(rho.m); }

inline void validate_density(const Mat2& m, double herm_tol = kExactTol,
                             double trace_tol = kExactTol, double eig_floor = -1e-10) {
    if (!is_finite(m)) throw std::invalid_argument("density matrix has non-finite entries");
    if (hermiticity_defect(m) > herm_tol)
        throw std::invalid_argument("density matrix is not Hermitian within tolerance");
    if (std::abs(trace(m) - cplx{1, 0}) > trace_tol)
        throw std::invalid_argument("density matrix trace differs from 1");
    if (hermitian_eigenvalues(m)[0] < eig_floor)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

inline DensityMatrix bloch_to_density(const BlochVector& b) {
    if (bloch_length(b) > 1.0 + kNumericTol)
        throw std::invalid_argument("Bloch vector lies outside the unit ball");
    // rho = (I + b . sigma)/2
    Mat2 m;
    m(0, 0) = cplx{0.5 * (1.0 + b.sz), 0.0};
    m(0, 1) = cplx{0.5 * b.sx, -0.5 * b.sy};
    m(1, 0) = cplx{0.5 * b.sx, 0.5 * b.sy};
    m(1, 1) = cplx{0.5 * (1.0 - b.sz), 0.0};
    return {m};
}

inline BlochVector density_to_bloch(const DensityMatrix& rho) {
    validate_density(rho.m);
    const Mat2& m = rho.m;
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), m(0, 0).real() - m(1, 1).real()};
}

/// Closeness to the blank state |0>: f = sqrt(<0|rho|0>) = sqrt((1 - <sigma3>)/2).
inline double fidelity_to_blank(const DensityMatrix& rho) {
    const double sz = rho.m(0, 0).real() - rho.m(1, 1).real();
    return std::sqrt(std::max(0.0, 0.5 * (1.0 - sz)));
}

inline double purity(const DensityMatrix& rho) { return trace(rho.m * rho.m).real(); }

/// Half the trace norm of rho1 - rho2; for qubits this is half the
/// Euclidean distance between the Bloch vectors.
inline double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    const Mat2 d = rho1.m - rho2.m;
    const auto eig = hermitian_eigenvalues(d);
    return 0.5 * (std::abs(eig[0]) + std::abs(eig[1]));
}

} // namespace qdel
