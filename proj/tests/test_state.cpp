// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdel/errors.hpp"
#include "qdel/mat2.hpp"
#include "qdel/state.hpp"

#include "helpers.hpp"

using namespace qdel;
using qdel_test::random_bloch_in_ball;

TEST_CASE("Pauli algebra in the (|1>, |0>) basis") {
    const Mat2 id = Mat2::identity();

    CHECK(max_abs_diff(sigma_x() * sigma_x(), id) == 0.0);
    CHECK(max_abs_diff(sigma_y() * sigma_y(), id) == 0.0);
    CHECK(max_abs_diff(sigma_z() * sigma_z(), id) == 0.0);
    CHECK(max_abs_diff(sigma_x() * sigma_y(), cplx{0, 1} * sigma_z()) == 0.0);

    // sigma_plus = |1><0| must raise: act on the |0> column vector.
    const Mat2 projector_1 = 0.5 * (id + sigma_z());
    CHECK(max_abs_diff(sigma_plus() * sigma_minus(), projector_1) == 0.0);

    CHECK(trace(sigma_z()) == cplx{0, 0});
    CHECK(hermiticity_defect(sigma_y()) == 0.0);
    CHECK(hermiticity_defect(sigma_plus()) == 1.0);  // strictly one-sided
}

TEST_CASE("hermitian_eigenvalues closed form") {
    Mat2 m;
    m(0, 0) = cplx{2.0, 0.0};
    m(0, 1) = cplx{1.0, -1.0};
    m(1, 0) = cplx{1.0, 1.0};
    m(1, 1) = cplx{-1.0, 0.0};
    // Eigenvalues of [[2, 1-i], [1+i, -1]]: (1 +- sqrt(17))/2.
    const auto eig = hermitian_eigenvalues(m);
    CHECK_THAT(eig[0], Catch::Matchers::WithinAbs(0.5 * (1.0 - std::sqrt(17.0)), 1e-14));
    CHECK_THAT(eig[1], Catch::Matchers::WithinAbs(0.5 * (1.0 + std::sqrt(17.0)), 1e-14));
}

TEST_CASE("pure_state_from_angles maps the named points") {
    const BlochVector north = pure_state_from_angles({0.0, 0.0});
    CHECK(north.sx == 0.0);
    CHECK(north.sz == 1.0);

    const BlochVector south = pure_state_from_angles({kPi, 0.0});
    CHECK_THAT(south.sz, Catch::Matchers::WithinAbs(-1.0, 1e-15));

    const BlochVector equator = pure_state_from_angles({kPi / 2.0, kPi / 2.0});
    CHECK_THAT(equator.sy, Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(bloch_length(equator), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("angle validation rejects out-of-range input") {
    CHECK_THROWS_AS(pure_state_from_angles({-0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state_from_angles({kPi + 0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state_from_angles({0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state_from_angles({0.5, 2.0 * kPi}), std::invalid_argument);
}

TEST_CASE("bloch/density round trip") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const BlochVector b = random_bloch_in_ball(rng);
        const BlochVector back = density_to_bloch(bloch_to_density(b));
        CHECK_THAT(back.sx, Catch::Matchers::WithinAbs(b.sx, 1e-15));
        CHECK_THAT(back.sy, Catch::Matchers::WithinAbs(b.sy, 1e-15));
        CHECK_THAT(back.sz, Catch::Matchers::WithinAbs(b.sz, 1e-15));
    }
}

TEST_CASE("bloch_to_density rejects vectors outside the ball") {
    CHECK_THROWS_AS(bloch_to_density({1.01, 0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(bloch_to_density({1.0, 0.0, 0.0}));
}

TEST_CASE("validate_density rejects each broken invariant") {
    Mat2 not_hermitian = Mat2::identity();
    not_hermitian(0, 1) = cplx{0.5, 0.0};
    not_hermitian = 0.5 * not_hermitian;
    CHECK_THROWS_AS(validate_density(not_hermitian), std::invalid_argument);

    Mat2 wrong_trace = Mat2::identity();
    CHECK_THROWS_AS(validate_density(wrong_trace), std::invalid_argument);

    Mat2 negative;  // diag(1.2, -0.2): trace 1, Hermitian, not positive
    negative(0, 0) = cplx{1.2, 0.0};
    negative(1, 1) = cplx{-0.2, 0.0};
    CHECK_THROWS_AS(validate_density(negative), std::invalid_argument);

    CHECK_NOTHROW(validate_density(bloch_to_density({0.3, -0.2, 0.4}).m));
}

TEST_CASE("fidelity_to_blank at the reference points") {
    CHECK(fidelity_to_blank(bloch_to_density({0, 0, -1})) == 1.0);  // the blank state itself
    CHECK(fidelity_to_blank(bloch_to_density({0, 0, 1})) == 0.0);
    CHECK_THAT(fidelity_to_blank(bloch_to_density({0, 0, 0})),
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("purity separates pure from mixed") {
    CHECK_THAT(purity(bloch_to_density({0, 0, 1})), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(purity(bloch_to_density({0, 0, 0})), Catch::Matchers::WithinAbs(0.5, 1e-15));

    std::mt19937 rng(12);
    for (int i = 0; i < 100; ++i) {
        const BlochVector b = random_bloch_in_ball(rng);
        const double len = bloch_length(b);
        CHECK_THAT(purity(bloch_to_density(b)),
                   Catch::Matchers::WithinAbs(0.5 * (1.0 + len * len), 1e-13));
    }
}

TEST_CASE("trace_distance is half the Bloch distance and a metric") {
    CHECK_THAT(trace_distance(bloch_to_density({0, 0, 1}), bloch_to_density({0, 0, -1})),
               Catch::Matchers::WithinAbs(1.0, 1e-15));

    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        const BlochVector b1 = random_bloch_in_ball(rng);
        const BlochVector b2 = random_bloch_in_ball(rng);
        const BlochVector b3 = random_bloch_in_ball(rng);
        const DensityMatrix r1 = bloch_to_density(b1);
        const DensityMatrix r2 = bloch_to_density(b2);
        const DensityMatrix r3 = bloch_to_density(b3);

        const double euclid =
            std::sqrt((b1.sx - b2.sx) * (b1.sx - b2.sx) + (b1.sy - b2.sy) * (b1.sy - b2.sy) +
                      (b1.sz - b2.sz) * (b1.sz - b2.sz));
        const double d12 = trace_distance(r1, r2);
        CHECK_THAT(d12, Catch::Matchers::WithinAbs(0.5 * euclid, 1e-13));

        CHECK(trace_distance(r1, r1) == 0.0);
        CHECK_THAT(trace_distance(r2, r1), Catch::Matchers::WithinAbs(d12, 1e-15));
        CHECK(d12 <= trace_distance(r1, r3) + trace_distance(r3, r2) + 1e-13);
    }
}

TEST_CASE("numerical_failure carries the step index") {
    const numerical_failure plain("boom");
    CHECK(plain.step_index == -1);
    CHECK(std::string(plain.what()) == "boom");

    const numerical_failure indexed("boom", 7);
    CHECK(indexed.step_index == 7);
    CHECK(std::string(indexed.what()).find("(step 7)") != std::string::npos);
}
