// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include "doctest.h"

#include "ttdhp/ofdm_grid.hpp"

using ttdhp::OfdmGrid;

TEST_CASE("grid places the carrier on the center subcarrier") {
    const OfdmGrid grid(300e9, 30e9, 129);
    CHECK(grid.center_index() == 64);
    CHECK(grid.frequency_hz(grid.center_index()) == doctest::Approx(300e9).epsilon(1e-15));
    CHECK(grid.freq_ratio(grid.center_index()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("grid spacing and edge frequencies") {
    const OfdmGrid grid(300e9, 30e9, 129);
    // First subcarrier sits 64 spacings below the carrier.
    CHECK(grid.frequency_hz(0) == doctest::Approx(285116279069.76746).epsilon(1e-12));
    CHECK(grid.frequency_hz(128) - grid.frequency_hz(127) ==
          doctest::Approx(30e9 / 129).epsilon(1e-12));
    CHECK(grid.frequency_hz(128) + grid.frequency_hz(0) ==
          doctest::Approx(2 * 300e9).epsilon(1e-15));
}

TEST_CASE("frequency ratios average to one") {
    const OfdmGrid grid(140e9, 20e9, 33);
    double sum = 0.0;
    for (double r : grid.freq_ratios())
        sum += r;
    CHECK(sum / grid.subcarrier_count() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(grid.freq_ratios().size() == 33);
    CHECK(grid.frequencies_hz().size() == 33);
}

TEST_CASE("grid rejects invalid shapes") {
    CHECK_THROWS_AS(OfdmGrid(0.0, 30e9, 129), std::invalid_argument);
    CHECK_THROWS_AS(OfdmGrid(300e9, -1.0, 129), std::invalid_argument);
    CHECK_THROWS_AS(OfdmGrid(300e9, 30e9, 128), std::invalid_argument); // even K
    CHECK_THROWS_AS(OfdmGrid(300e9, 30e9, 0), std::invalid_argument);
    CHECK_THROWS_AS(OfdmGrid(300e9, 700e9, 129), std::invalid_argument); // f_0 <= 0
    CHECK_THROWS_AS(OfdmGrid(300e9, 30e9, 129).frequency_hz(129), std::out_of_range);
    CHECK_NOTHROW(OfdmGrid(300e9, 0.0, 1)); // narrowband degenerate grid is usable
}
