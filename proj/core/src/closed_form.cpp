// SPDX-License-Identifier: Apache-2.0
#include "ttdhp/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ttdhp {

ScenarioParams::ScenarioParams(OfdmGrid grid_in, ArrayGeometry geom_in,
                               std::vector<double> directions_in, double delay_bound_s_in)
    : grid(grid_in), geom(geom_in), directions(std::move(directions_in)),
      delay_bound_s(delay_bound_s_in) {
    if (static_cast<int>(directions.size()) != geom.num_chains())
        throw std::invalid_argument("ScenarioParams: one direction per RF chain required");
    for (double d : directions)
        if (!(d >= -1.0 && d <= 1.0))
            throw std::invalid_argument("ScenarioParams: direction outside [-1, 1]");
    if (!(delay_bound_s >= 0.0))
        throw std::invalid_argument("ScenarioParams: delay bound must be non-negative");
}

ScenarioParams ScenarioParams::with_antennas(int num_antennas) const {
    return {grid,
            ArrayGeometry(num_antennas, geom.ttd_per_chain(), geom.num_chains(), geom.spacing_m()),
            directions, delay_bound_s};
}

ScenarioParams ScenarioParams::with_delay_bound(double delay_bound_s_in) const {
    return {grid, geom, directions, delay_bound_s_in};
}

ScenarioParams ScenarioParams::with_directions(std::vector<double> directions_in) const {
    return {grid, geom, std::move(directions_in), delay_bound_s};
}

namespace {

// Coefficient (2m+1)N - 1 of the interior delay target; non-negative, zero
// only for a single-element subarray at m = 0.
double target_coefficient(int ps_per_ttd, int ttd) {
    return static_cast<double>(2 * ttd + 1) * ps_per_ttd - 1.0;
}

struct ChainValues {
    std::vector<double> phases;  // N per device
    std::vector<double> delays;  // one per device
};

// Mirror of the gain-preserving sign flip applied to one chain's values.
void flip_chain(ChainValues &chain, double delay_bound_s) {
    for (double &x : chain.phases)
        x = -x;
    for (double &t : chain.delays)
        t = delay_bound_s - t;
}

HybridDesign assemble(const ScenarioParams &sc,
                      const std::function<ChainValues(double)> &solve_positive) {
    const int m = sc.geom.ttd_per_chain();
    const int n = sc.geom.ps_per_ttd();
    std::vector<double> phases;
    phases.reserve(static_cast<std::size_t>(sc.geom.num_chains()) * m * n);
    std::vector<double> delays;
    delays.reserve(static_cast<std::size_t>(sc.geom.num_chains()) * m);
    for (double psi : sc.directions) {
        ChainValues chain = solve_positive(std::abs(psi));
        if (psi < 0.0)
            flip_chain(chain, sc.delay_bound_s);
        phases.insert(phases.end(), chain.phases.begin(), chain.phases.end());
        delays.insert(delays.end(), chain.delays.begin(), chain.delays.end());
    }
    return {sc.geom, std::move(phases), std::move(delays), sc.delay_bound_s};
}

} // namespace

HybridDesign optimal_design(const ScenarioParams &sc) {
    const int m = sc.geom.ttd_per_chain();
    const int n = sc.geom.ps_per_ttd();
    const double carrier = sc.grid.carrier_hz();
    const double bound_norm = sc.normalized_bound();
    return assemble(sc, [&](double s) {
        ChainValues chain;
        for (int mi = 0; mi < m; ++mi) {
            if (interior_branch(n, mi, s, bound_norm)) {
                // min() guards the division rounding at the branch boundary.
                chain.delays.push_back(
                    std::min(target_coefficient(n, mi) * s / (4.0 * carrier), sc.delay_bound_s));
                for (int ni = 0; ni < n; ++ni)
                    chain.phases.push_back(static_cast<double>(n - 2 * ni - 1) * s / 2.0);
            } else {
                chain.delays.push_back(sc.delay_bound_s);
                for (int ni = 0; ni < n; ++ni)
                    chain.phases.push_back(bound_norm - (mi * n + ni) * s);
            }
        }
        return chain;
    });
}

HybridDesign baseline_design(const ScenarioParams &sc) {
    const int m = sc.geom.ttd_per_chain();
    const int n = sc.geom.ps_per_ttd();
    const double carrier = sc.grid.carrier_hz();
    return assemble(sc, [&](double s) {
        ChainValues chain;
        for (int mi = 0; mi < m; ++mi) {
            // Delays grow past the bound for large arrays and get clipped;
            // the phases are not re-optimized to compensate.
            chain.delays.push_back(
                std::min((mi + 1) * n * s / (2.0 * carrier), sc.delay_bound_s));
            for (int ni = 0; ni < n; ++ni)
                chain.phases.push_back(-static_cast<double>(ni) * s);
        }
        return chain;
    });
}

GramConstants gram_constants(const OfdmGrid &grid, int ps_per_ttd) {
    if (ps_per_ttd < 1)
        throw std::invalid_argument("gram_constants: element count must be positive");
    if (grid.bandwidth_hz() <= 0.0 || grid.subcarrier_count() < 3)
        throw std::invalid_argument(
            "gram_constants: zero bandwidth or single subcarrier makes the Gram matrix singular");
    const double ratio = grid.bandwidth_hz() / grid.carrier_hz();
    const double k = grid.subcarrier_count();
    const double schur = ps_per_ttd * ratio * ratio * (k * k - 1.0) / (12.0 * k * k);
    return {schur, ps_per_ttd + schur, 1.0 / schur};
}

Eigen::MatrixXd gram_inverse(int ps_per_ttd, double schur) {
    if (ps_per_ttd < 1)
        throw std::invalid_argument("gram_inverse: element count must be positive");
    if (!(schur > 0.0))
        throw std::invalid_argument("gram_inverse: Schur complement must be positive");
    const int n = ps_per_ttd;
    Eigen::MatrixXd inv(n + 1, n + 1);
    inv.topLeftCorner(n, n) =
        Eigen::MatrixXd::Identity(n, n) + Eigen::MatrixXd::Constant(n, n, 1.0 / schur);
    inv.topRightCorner(n, 1).setConstant(1.0 / schur);
    inv.bottomLeftCorner(1, n).setConstant(1.0 / schur);
    inv(n, n) = 1.0 / schur;
    return inv;
}

double interior_delay_target(int ps_per_ttd, int ttd, double direction) {
    if (ps_per_ttd < 1 || ttd < 0)
        throw std::invalid_argument("interior_delay_target: bad subarray indices");
    return target_coefficient(ps_per_ttd, ttd) * direction / 2.0;
}

bool interior_branch(int ps_per_ttd, int ttd, double direction, double normalized_bound) {
    // Cross-multiplied form of target <= bound; exact for the degenerate
    // single-element first subarray where the coefficient vanishes.
    return direction * target_coefficient(ps_per_ttd, ttd) <= 2.0 * normalized_bound;
}

double antenna_bound(int ttd_per_chain, double carrier_hz, double delay_bound_s, double direction,
                     int ttd) {
    if (ttd_per_chain < 1 || ttd < 0 || ttd >= ttd_per_chain)
        throw std::invalid_argument("antenna_bound: bad subarray indices");
    if (!(carrier_hz > 0.0) || !(delay_bound_s >= 0.0))
        throw std::invalid_argument("antenna_bound: bad carrier or delay bound");
    const double s = std::abs(direction);
    const double odd = static_cast<double>(2 * ttd + 1);
    if (s == 0.0)
        return std::numeric_limits<double>::infinity();
    return ttd_per_chain / odd + 4.0 * ttd_per_chain * carrier_hz * delay_bound_s / (odd * s);
}

std::optional<long long> max_antenna_count(int ttd_per_chain, double carrier_hz,
                                           double delay_bound_s, double direction) {
    const double bound =
        antenna_bound(ttd_per_chain, carrier_hz, delay_bound_s, direction, ttd_per_chain - 1);
    if (std::isinf(bound))
        return std::nullopt;
    return static_cast<long long>(std::floor(bound));
}

double delay_bound_needed(int num_antennas, int ttd_per_chain, double carrier_hz, double direction,
                          int ttd) {
    if (ttd_per_chain < 1 || ttd < 0 || ttd >= ttd_per_chain || num_antennas < 1)
        throw std::invalid_argument("delay_bound_needed: bad subarray indices");
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("delay_bound_needed: carrier frequency must be positive");
    const double s = std::abs(direction);
    const double odd = static_cast<double>(2 * ttd + 1);
    return std::max(0.0, s * (odd * num_antennas - ttd_per_chain) /
                             (4.0 * ttd_per_chain * carrier_hz));
}

double min_delay_bound(int num_antennas, int ttd_per_chain, double carrier_hz, double direction) {
    return delay_bound_needed(num_antennas, ttd_per_chain, carrier_hz, direction,
                              ttd_per_chain - 1);
}

} // namespace ttdhp
