// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ttdhp/array_geometry.hpp"
#include "ttdhp/ofdm_grid.hpp"
#include "ttdhp/precoder.hpp"

namespace ttdhp {

/**
 * Everything a precoder designer needs: the grid, the array wiring, one
 * central spatial direction per RF chain, and the per-device delay bound.
 */
struct ScenarioParams {
    ScenarioParams(OfdmGrid grid_in, ArrayGeometry geom_in, std::vector<double> directions_in,
                   double delay_bound_s_in);

    OfdmGrid grid;
    ArrayGeometry geom;
    std::vector<double> directions; // one per RF chain, each in [-1, 1]
    double delay_bound_s;

    double normalized_bound() const noexcept { return 2.0 * grid.carrier_hz() * delay_bound_s; }

    ScenarioParams with_antennas(int num_antennas) const;
    ScenarioParams with_delay_bound(double delay_bound_s_in) const;
    ScenarioParams with_directions(std::vector<double> directions_in) const;
};

/**
 * Closed-form optimum of the per-subarray box-constrained quadratic fit.
 *
 * For direction s >= 0 and subarray m (0-based): whenever
 * s * ((2m+1)N - 1) <= 2 * normalized_bound the delay target is interior,
 *   x[n] = (N - 2n - 1) s / 2,  t[m] = ((2m+1)N - 1) s / (4 f_c);
 * otherwise the delay saturates at the bound and x[n] = bound_norm - ramp,
 * with ramp = (mN + n) s. Negative directions are solved at |s| and mapped
 * through the gain-preserving sign flip. Delays are feasible by construction.
 */
HybridDesign optimal_design(const ScenarioParams &sc);

/**
 * Prior-practice baseline: x[n] = -n s, t[m] = (m+1) N s / (2 f_c), with
 * delays clipped to the bound when they exceed it. Without clipping it
 * differs from the optimum only by a per-subcarrier common phase, so the
 * gains coincide; clipping is what separates the two.
 */
HybridDesign baseline_design(const ScenarioParams &sc);

/**
 * Closed-form constants of the aggregate Gram matrix C of the per-subcarrier
 * stacks: schur = N (B/f_c)^2 (K^2 - 1) / (12 K^2) is the Schur complement
 * of the corner, corner = N + schur, and the corner of C^{-1} is 1/schur.
 * Requires bandwidth > 0 and at least 3 subcarriers; otherwise C is singular.
 */
struct GramConstants {
    double schur;
    double corner;
    double corner_inverse;
};

GramConstants gram_constants(const OfdmGrid &grid, int ps_per_ttd);

// Block closed form of C^{-1} given the Schur complement; (N+1) x (N+1).
Eigen::MatrixXd gram_inverse(int ps_per_ttd, double schur);

// Unconstrained delay target e^T C^{-1} d = ((2m+1)N - 1) s / 2 for 0-based m.
double interior_delay_target(int ps_per_ttd, int ttd, double direction);

// True when the delay target of subarray `ttd` fits under the normalized bound.
// Equality counts as interior; both branches coincide there.
bool interior_branch(int ps_per_ttd, int ttd, double direction, double normalized_bound);

/**
 * Largest real antenna count for which subarray `ttd` (0-based) keeps an
 * interior delay: M/(2m+1) + 4 M f_c bound / ((2m+1) |direction|).
 * The last subarray binds, so max_antenna_count evaluates there and floors;
 * broadside (direction 0) is unbounded and yields nullopt.
 */
double antenna_bound(int ttd_per_chain, double carrier_hz, double delay_bound_s, double direction,
                     int ttd);
std::optional<long long> max_antenna_count(int ttd_per_chain, double carrier_hz,
                                           double delay_bound_s, double direction);

/**
 * Smallest delay bound that keeps subarray `ttd` (0-based) interior for a
 * given antenna count: |direction| ((2m+1) N_t / M - 1) M / (4 f_c) written
 * as |direction| ((2m+1) N_t - M) / (4 M f_c). min_delay_bound evaluates the
 * binding last subarray.
 */
double delay_bound_needed(int num_antennas, int ttd_per_chain, double carrier_hz, double direction,
                          int ttd);
double min_delay_bound(int num_antennas, int ttd_per_chain, double carrier_hz, double direction);

} // namespace ttdhp
