// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "ttdhp/channel.hpp"

using namespace ttdhp;

namespace {
const OfdmGrid kGrid(300e9, 30e9, 129);
}

TEST_CASE("steering vectors are unit norm with geometric phase") {
    const auto a = steering(64, 0.37);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // Consecutive entries differ by exp(-j pi psi).
    const std::complex<double> step = a(5) / a(4);
    CHECK(std::abs(step - std::polar(1.0, -std::numbers::pi * 0.37)) < 1e-14);
    CHECK(std::abs(a(0) - std::complex<double>(0.125, 0.0)) < 1e-15);
}

TEST_CASE("matched gain handles the removable singularity") {
    CHECK(matched_gain(1024, 0.0) == 1.0);
    CHECK(matched_gain(7, std::numbers::pi) == 1.0); // sin(delta) vanishes again
    CHECK(matched_gain(4, 0.1) ==
          doctest::Approx(std::abs(std::sin(0.4) / (4 * std::sin(0.1)))).epsilon(1e-14));
    CHECK(matched_gain(256, 0.01) < 1.0);
}

TEST_CASE("matched beam loses gain off center as the array grows") {
    // Offset direction seen at the edge subcarrier for a center direction 0.8.
    const double edge_delta =
        std::numbers::pi / 2 * (kGrid.freq_ratio(128) - 1.0) * 0.8;
    const double g16 = matched_gain(16, edge_delta);
    const double g128 = matched_gain(128, edge_delta);
    const double g1024 = matched_gain(1024, edge_delta);
    CHECK(g16 > g128);
    CHECK(g128 > g1024);
    CHECK(g1024 == doctest::Approx(0.013266665034328).epsilon(1e-12));
    CHECK(g1024 < 0.05);
}

TEST_CASE("squint profile peaks at the center subcarrier") {
    const auto profile = squint_profile(kGrid, 256, 0.8);
    REQUIRE(profile.size() == 129);
    CHECK(profile[64] == 1.0);
    for (int k = 0; k < 129; ++k) {
        CHECK(profile[k] <= 1.0);
        if (k != 64)
            CHECK(profile[k] < profile[64]);
    }
}

TEST_CASE("array gain of the matched steering vector") {
    const auto beam = steering(256, 0.8);
    CHECK(array_gain(beam, kGrid, 64, 0.8) == doctest::Approx(1.0).epsilon(1e-14));
    // Off center the direct evaluation must agree with the closed form.
    const double delta = std::numbers::pi / 2 * (kGrid.freq_ratio(10) - 1.0) * 0.8;
    CHECK(array_gain(beam, kGrid, 10, 0.8) ==
          doctest::Approx(matched_gain(256, delta)).epsilon(1e-12));
    Eigen::VectorXcd unnormalized = 2.0 * beam;
    CHECK_THROWS_AS(array_gain(unnormalized, kGrid, 0, 0.8), std::invalid_argument);
}

TEST_CASE("path sets validate and mirror directions") {
    const PathSet set = PathSet::from_directions({0.8, -0.25});
    CHECK(set.path_count() == 2);
    CHECK(set.tx_direction(0) == 0.8);
    CHECK(set.tx_direction(1) == -0.25);
    const PathSet mirrored = set.with_negated_directions();
    CHECK(mirrored.tx_direction(0) == -0.8);
    CHECK(mirrored.tx_direction(1) == 0.25);
    CHECK(mirrored.path(0).gain == set.path(0).gain);

    CHECK_THROWS_AS(PathSet::from_directions({1.5}), std::invalid_argument);
    CHECK_THROWS_AS(PathSet({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(PathSet({Path{}}, 0), std::invalid_argument);
}

TEST_CASE("random path sets are reproducible") {
    const PathSet a = PathSet::random(7, 3, 2, 1e-9);
    const PathSet b = PathSet::random(7, 3, 2, 1e-9);
    const PathSet c = PathSet::random(8, 3, 2, 1e-9);
    for (int l = 0; l < 3; ++l) {
        CHECK(a.path(l).gain == b.path(l).gain);
        CHECK(a.path(l).delay_s == b.path(l).delay_s);
        CHECK(a.tx_direction(l) == b.tx_direction(l));
    }
    CHECK(a.path(0).gain != c.path(0).gain);
}

TEST_CASE("channel matrix shape and single path factorization") {
    const ArrayGeometry geom = ArrayGeometry::half_wavelength(64, 4, 1, kGrid.carrier_hz());
    const PathSet set = PathSet::from_directions({0.3}, 2);
    const Eigen::MatrixXcd h = channel_matrix(kGrid, geom, set, 64);
    REQUIRE(h.rows() == 64);
    REQUIRE(h.cols() == 2);
    // Zero delay, unit gain, broadside receive side (from_directions only
    // constrains departure): H = sqrt(Nt Nr) a_t(0.3) a_r(0)^H.
    const Eigen::MatrixXcd expected =
        std::sqrt(64.0 * 2.0) * steering(64, 0.3) * steering(2, 0.0).adjoint();
    CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-12);
}
