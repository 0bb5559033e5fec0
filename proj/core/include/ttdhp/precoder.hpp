// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ttdhp/array_geometry.hpp"
#include "ttdhp/channel.hpp"
#include "ttdhp/ofdm_grid.hpp"

namespace ttdhp {

/**
 * Joint phase-shifter / delay-device precoder setting.
 *
 * Phase-shifter values are stored in units of pi (the applied phase is
 * pi * x) and are kept unwrapped; the delay design below needs the raw
 * values, display code reduces mod 2 where it matters. Delays are seconds
 * and must sit inside [0, delay_bound_s] element-wise.
 *
 * Layout: ps_phases[(chain * M + ttd) * N + element], delays_s[chain * M + ttd]
 * with M = ttd_per_chain and N = ps_per_ttd.
 */
class HybridDesign {
  public:
    HybridDesign(ArrayGeometry geom, std::vector<double> ps_phases, std::vector<double> delays_s,
                 double delay_bound_s);

    const ArrayGeometry &geometry() const noexcept { return geom_; }
    double delay_bound_s() const noexcept { return delay_bound_s_; }

    // 2 * carrier * bound, the dimensionless box edge for normalized delays.
    double normalized_bound(double carrier_hz) const noexcept {
        return 2.0 * carrier_hz * delay_bound_s_;
    }

    double ps_phase(int chain, int ttd, int element) const;
    double delay_s(int chain, int ttd) const;

    // 2 * carrier * delay; the beam entry phase contribution is -pi * ratio_k * this.
    double normalized_delay(int chain, int ttd, double carrier_hz) const {
        return 2.0 * carrier_hz * delay_s(chain, ttd);
    }

    const std::vector<double> &ps_phases() const noexcept { return ps_phases_; }
    const std::vector<double> &delays_s() const noexcept { return delays_s_; }

  private:
    ArrayGeometry geom_;
    std::vector<double> ps_phases_;
    std::vector<double> delays_s_;
    double delay_bound_s_;
};

/**
 * Frequency-flat phase-shifter factor, num_antennas x (M * num_chains).
 * Column chain*M + ttd has its N nonzeros in rows ttd*N .. ttd*N + N - 1,
 * each of modulus 1/sqrt(num_antennas).
 */
Eigen::MatrixXcd ps_matrix(const HybridDesign &design);

// Per-subcarrier delay factor, (M * num_chains) x num_chains, block diagonal
// with unit-modulus entries exp(-j 2 pi f_k t).
Eigen::MatrixXcd ttd_matrix(const HybridDesign &design, const OfdmGrid &grid, int k);

// Column `chain` of ps_matrix * ttd_matrix without materializing either factor.
Eigen::VectorXcd effective_beam(const HybridDesign &design, const OfdmGrid &grid, int k, int chain);

/**
 * Per-subcarrier reference precoder whose column per chain is the array
 * response at that chain's squinted direction; it attains gain 1 at every
 * subcarrier and is what the hybrid factors try to match.
 */
class FullyDigitalPrecoder {
  public:
    FullyDigitalPrecoder(int num_antennas, std::vector<double> directions);

    int num_antennas() const noexcept { return num_antennas_; }
    const std::vector<double> &directions() const noexcept { return directions_; }

    Eigen::VectorXcd column(const OfdmGrid &grid, int k, int chain) const;
    Eigen::MatrixXcd matrix(const OfdmGrid &grid, int k) const;

  private:
    int num_antennas_;
    std::vector<double> directions_;
};

/**
 * Subcarrier-averaged squared Frobenius distance between the fully-digital
 * reference for the paths' directions and the hybrid factorization.
 * Evaluated per entry as |exp(-j pi r g) - exp(j pi x) exp(-j pi r v)|^2 / N_t
 * summed over chains, devices, elements and averaged over subcarriers, so
 * large arrays never materialize the dense factors.
 */
double objective(const HybridDesign &design, const OfdmGrid &grid, const PathSet &paths);

// Same value computed from the materialized matrices; cross-check path.
double objective_dense(const HybridDesign &design, const OfdmGrid &grid, const PathSet &paths);

struct SignFlipped {
    HybridDesign design;
    PathSet paths;
};

/**
 * Gain-preserving mirror: x -> -x, t -> bound - t, directions negated.
 * The flipped design achieves the original per-subcarrier gains on the
 * negated directions exactly; applying the transform twice is the identity.
 */
SignFlipped sign_flip(const HybridDesign &design, const PathSet &paths);

} // namespace ttdhp
