// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "ttdhp/array_geometry.hpp"
#include "ttdhp/ofdm_grid.hpp"

namespace ttdhp {

// One propagation path of the multipath channel.
struct Path {
    std::complex<double> gain{1.0, 0.0};
    double delay_s{0.0};
    double aod_rad{0.0}; // departure angle, in [-pi/2, pi/2]
    double aoa_rad{0.0}; // arrival angle, in [-pi/2, pi/2]
};

/**
 * Multipath set shared by the channel and the precoder designers.
 *
 * Spatial directions are the sines of the angles and live in [-1, 1]; they
 * are stored canonically so scenario files can specify them without an
 * angle round trip.
 */
class PathSet {
  public:
    PathSet(std::vector<Path> paths, int num_rx_antennas);

    // Unit-gain zero-delay paths from transmit spatial directions.
    static PathSet from_directions(const std::vector<double> &tx_directions, int num_rx_antennas = 1);

    // Circularly-symmetric unit-variance gains, delays uniform in [0, delay_window_s].
    static PathSet random(std::uint64_t seed, int path_count, int num_rx_antennas,
                          double delay_window_s);

    int path_count() const noexcept { return static_cast<int>(paths_.size()); }
    int num_rx_antennas() const noexcept { return num_rx_; }
    const Path &path(int l) const;

    double tx_direction(int l) const;
    double rx_direction(int l) const;
    const std::vector<double> &tx_directions() const noexcept { return tx_dir_; }

    // Same gains and delays with both sides mirrored about broadside.
    PathSet with_negated_directions() const;

  private:
    PathSet() = default;

    std::vector<Path> paths_;
    std::vector<double> tx_dir_;
    std::vector<double> rx_dir_;
    int num_rx_{1};
};

// Unit-norm ULA response; entry n is exp(-j pi n direction) / sqrt(count).
Eigen::VectorXcd steering(int count, double direction);

/**
 * Normalized gain of a beam matched to the array response at a direction
 * offset of delta_rad: |sin(count * delta) / (count * sin(delta))|.
 * Offsets where sin(delta) vanishes are removable and evaluate to 1.
 */
double matched_gain(int count, double delta_rad);

// Frequency-domain channel at subcarrier k, num_antennas x num_rx_antennas.
Eigen::MatrixXcd channel_matrix(const OfdmGrid &grid, const ArrayGeometry &geom,
                                const PathSet &paths, int k);

/**
 * |steering(N, ratio_k * center_direction)^H beam| for a unit-norm beam.
 * The frequency ratio is applied to the direction internally, so callers
 * always pass the center direction of the path.
 */
double array_gain(const Eigen::VectorXcd &beam, const OfdmGrid &grid, int k,
                  double center_direction);

/**
 * Per-subcarrier gain of the beam matched at the center frequency; shows how
 * the gain collapses away from the center subcarrier as the array grows.
 */
std::vector<double> squint_profile(const OfdmGrid &grid, int num_antennas, double center_direction);
std::vector<double> squint_profile(const OfdmGrid &grid, const ArrayGeometry &geom,
                                   double center_direction);

} // namespace ttdhp
