// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace ttdhp {

// Propagation speed used by the half-wavelength spacing convention (m/s).
inline constexpr double kPropagationSpeedMps = 3.0e8;

/**
 * Uniform linear transmit array wired as a delay-phase hybrid front end.
 *
 * The num_antennas elements are split, per RF chain, into ttd_per_chain
 * contiguous subarrays; each subarray shares one delay device and carries
 * one phase shifter per element, so ps_per_ttd = num_antennas / ttd_per_chain.
 */
class ArrayGeometry {
  public:
    ArrayGeometry(int num_antennas, int ttd_per_chain, int num_chains, double spacing_m)
        : num_antennas_(num_antennas), ttd_per_chain_(ttd_per_chain), num_chains_(num_chains),
          spacing_m_(spacing_m) {
        if (num_antennas_ < 1)
            throw std::invalid_argument("ArrayGeometry: antenna count must be positive");
        if (ttd_per_chain_ < 1)
            throw std::invalid_argument("ArrayGeometry: delay device count must be positive");
        if (num_antennas_ % ttd_per_chain_ != 0)
            throw std::invalid_argument("ArrayGeometry: antenna count must be divisible by the delay device count");
        if (num_chains_ < 1)
            throw std::invalid_argument("ArrayGeometry: RF chain count must be positive");
        if (num_antennas_ < num_chains_)
            throw std::invalid_argument("ArrayGeometry: antenna count must be at least the RF chain count");
        if (!(spacing_m_ > 0.0))
            throw std::invalid_argument("ArrayGeometry: element spacing must be positive");
    }

    static ArrayGeometry half_wavelength(int num_antennas, int ttd_per_chain, int num_chains,
                                         double carrier_hz) {
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("ArrayGeometry: carrier frequency must be positive");
        return {num_antennas, ttd_per_chain, num_chains, kPropagationSpeedMps / (2.0 * carrier_hz)};
    }

    int num_antennas() const noexcept { return num_antennas_; }
    int ttd_per_chain() const noexcept { return ttd_per_chain_; }
    int ps_per_ttd() const noexcept { return num_antennas_ / ttd_per_chain_; }
    int num_chains() const noexcept { return num_chains_; }
    double spacing_m() const noexcept { return spacing_m_; }

  private:
    int num_antennas_;
    int ttd_per_chain_;
    int num_chains_;
    double spacing_m_;
};

} // namespace ttdhp
