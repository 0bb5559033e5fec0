// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "ttdhp/closed_form.hpp"
#include "ttdhp/precoder.hpp"

using namespace ttdhp;

namespace {

ScenarioParams default_scenario() {
    return {OfdmGrid(300e9, 30e9, 129),
            ArrayGeometry::half_wavelength(256, 16, 1, 300e9),
            {0.8},
            340e-12};
}

HybridDesign random_feasible_design(std::uint64_t seed, const ScenarioParams &sc) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int slots = sc.geom.num_chains() * sc.geom.ttd_per_chain();
    std::vector<double> x(static_cast<std::size_t>(slots) * sc.geom.ps_per_ttd());
    std::vector<double> t(slots);
    for (double &v : x)
        v = phase(rng);
    for (double &v : t)
        v = unit(rng) * sc.delay_bound_s;
    return {sc.geom, std::move(x), std::move(t), sc.delay_bound_s};
}

} // namespace

TEST_CASE("design layout round trips through the accessors") {
    const ArrayGeometry geom = ArrayGeometry::half_wavelength(12, 3, 2, 300e9);
    std::vector<double> x(24), t(6);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = static_cast<double>(i);
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<double>(i) * 1e-13;
    const HybridDesign d(geom, x, t, 1e-12);
    CHECK(d.ps_phase(0, 0, 0) == 0.0);
    CHECK(d.ps_phase(0, 2, 3) == 11.0);
    CHECK(d.ps_phase(1, 0, 0) == 12.0);
    CHECK(d.ps_phase(1, 2, 3) == 23.0);
    CHECK(d.delay_s(0, 1) == 1e-13);
    CHECK(d.delay_s(1, 2) == 5e-13);
    CHECK(d.normalized_delay(0, 1, 300e9) == doctest::Approx(2.0 * 300e9 * 1e-13));
    CHECK(d.normalized_bound(300e9) == doctest::Approx(0.6));
}

TEST_CASE("design construction rejects bad shapes and infeasible delays") {
    const ArrayGeometry geom = ArrayGeometry::half_wavelength(8, 2, 1, 300e9);
    const std::vector<double> x(8, 0.0);
    const std::vector<double> t(2, 0.0);
    CHECK_NOTHROW(HybridDesign(geom, x, t, 1e-12));
    CHECK_THROWS_AS(HybridDesign(geom, std::vector<double>(7, 0.0), t, 1e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS(HybridDesign(geom, x, std::vector<double>(3, 0.0), 1e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS(HybridDesign(geom, x, {0.0, 2e-12}, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(HybridDesign(geom, x, {-1e-15, 0.0}, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(HybridDesign(geom, x, t, -1.0), std::invalid_argument);
    // Bound zero forces all-zero delays but is legal.
    CHECK_NOTHROW(HybridDesign(geom, x, t, 0.0));
}

TEST_CASE("factor matrices carry the wiring structure") {
    const ScenarioParams sc = default_scenario();
    const HybridDesign d = random_feasible_design(11, sc);
    const Eigen::MatrixXcd f1 = ps_matrix(d);
    REQUIRE(f1.rows() == 256);
    REQUIRE(f1.cols() == 16);
    const double scale = 1.0 / std::sqrt(256.0);
    for (int col = 0; col < 16; ++col)
        for (int row = 0; row < 256; ++row) {
            const bool in_support = row / 16 == col;
            if (in_support)
                CHECK(std::abs(std::abs(f1(row, col)) - scale) < 1e-15);
            else
                CHECK(f1(row, col) == std::complex<double>(0.0, 0.0));
        }

    const Eigen::MatrixXcd f2 = ttd_matrix(d, sc.grid, 3);
    REQUIRE(f2.rows() == 16);
    REQUIRE(f2.cols() == 1);
    for (int row = 0; row < 16; ++row) {
        CHECK(std::abs(std::abs(f2(row, 0)) - 1.0) < 1e-15);
        const double expected = -2.0 * std::numbers::pi * sc.grid.frequency_hz(3) * d.delay_s(0, row);
        CHECK(std::abs(f2(row, 0) - std::polar(1.0, expected)) < 1e-12);
    }
}

TEST_CASE("effective beam equals the factor product and keeps constant modulus") {
    const ScenarioParams sc = default_scenario();
    const HybridDesign d = random_feasible_design(23, sc);
    for (int k : {0, 17, 64, 128}) {
        const Eigen::VectorXcd beam = effective_beam(d, sc.grid, k, 0);
        const Eigen::VectorXcd product = (ps_matrix(d) * ttd_matrix(d, sc.grid, k)).col(0);
        CHECK((beam - product).cwiseAbs().maxCoeff() < 1e-13);
        const double scale = 1.0 / std::sqrt(256.0);
        for (int i = 0; i < beam.size(); ++i)
            CHECK(std::abs(std::abs(beam(i)) - scale) * std::sqrt(256.0) < 1e-12);
    }
}

TEST_CASE("fully digital reference reaches unit gain everywhere") {
    const ScenarioParams sc = default_scenario();
    const FullyDigitalPrecoder reference(256, {0.8});
    for (int k : {0, 40, 64, 100, 128}) {
        const Eigen::VectorXcd col = reference.column(sc.grid, k, 0);
        CHECK(array_gain(col, sc.grid, k, 0.8) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(reference.matrix(sc.grid, 5).cols() == 1);
    CHECK_THROWS_AS(FullyDigitalPrecoder(0, {0.8}), std::invalid_argument);
    CHECK_THROWS_AS(FullyDigitalPrecoder(8, {}), std::invalid_argument);
}

TEST_CASE("objective agrees with the dense evaluation") {
    const ScenarioParams sc = default_scenario();
    const PathSet paths = PathSet::from_directions(sc.directions);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const HybridDesign d = random_feasible_design(seed, sc);
        CHECK(objective(d, sc.grid, paths) ==
              doctest::Approx(objective_dense(d, sc.grid, paths)).epsilon(1e-9));
    }
    // The optimum scores strictly better than a random setting.
    const HybridDesign best = optimal_design(sc);
    CHECK(objective(best, sc.grid, paths) < objective(random_feasible_design(4, sc), sc.grid, paths));
}

TEST_CASE("sign flip preserves gains and is an involution") {
    const ScenarioParams sc = default_scenario();
    const PathSet paths = PathSet::from_directions(sc.directions);
    const HybridDesign d = optimal_design(sc);
    const SignFlipped flipped = sign_flip(d, paths);
    CHECK(flipped.paths.tx_direction(0) == -0.8);
    for (int k = 0; k < sc.grid.subcarrier_count(); ++k) {
        const double g = array_gain(effective_beam(d, sc.grid, k, 0), sc.grid, k, 0.8);
        const double gf =
            array_gain(effective_beam(flipped.design, sc.grid, k, 0), sc.grid, k, -0.8);
        CHECK(std::abs(g - gf) < 1e-12);
    }
    const SignFlipped back = sign_flip(flipped.design, flipped.paths);
    CHECK(back.paths.tx_direction(0) == 0.8);
    for (int m = 0; m < 16; ++m) {
        CHECK(back.design.ps_phase(0, m, 0) == d.ps_phase(0, m, 0));
        // Delays survive the double mirror only up to rounding of bound - t.
        CHECK(back.design.delay_s(0, m) == doctest::Approx(d.delay_s(0, m)).epsilon(1e-12));
    }
}

TEST_CASE("sign flip round trips exactly on box corner delays") {
    const ScenarioParams sc = default_scenario();
    const PathSet paths = PathSet::from_directions(sc.directions);
    std::vector<double> x(256, 0.25);
    std::vector<double> t(16, 0.0);
    t[1] = sc.delay_bound_s;
    t[2] = sc.delay_bound_s / 2;
    const HybridDesign d(sc.geom, x, t, sc.delay_bound_s);
    const SignFlipped twice = sign_flip(sign_flip(d, paths).design, paths.with_negated_directions());
    CHECK(twice.design.delay_s(0, 0) == 0.0);
    CHECK(twice.design.delay_s(0, 1) == sc.delay_bound_s);
    CHECK(twice.design.delay_s(0, 2) == sc.delay_bound_s / 2);
}
