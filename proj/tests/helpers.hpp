// SPDX-License-Identifier: Apache-2.0
// Shared sampling utilities for the test suite. Seeds are fixed so every
// run exercises the same points; failures are therefore reproducible.
#pragma once

#include <cmath>
#include <random>

#include "qdel/state.hpp"

namespace qdel_test {

/// Uniform point in the closed unit ball (rejection-free: direction from
/// normals, radius from the cube-root transform).
inline qdel::BlochVector random_bloch_in_ball(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm == 0.0) return {0.0, 0.0, 0.0};
    const double radius = std::cbrt(unit(rng));
    return {radius * x / norm, radius * y / norm, radius * z / norm};
}

inline qdel::InitialAngles random_angles(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    // theta0 from cos-uniform sampling keeps states uniform on the sphere.
    const double theta0 = std::acos(1.0 - 2.0 * u01(rng));
    const double phi0 = 2.0 * qdel::kPi * 0.999999 * u01(rng);
    return {theta0, phi0};
}

inline qdel::DensityMatrix random_density(std::mt19937& rng) {
    return qdel::bloch_to_density(random_bloch_in_ball(rng));
}

} // namespace qdel_test
