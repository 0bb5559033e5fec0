// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ttdhp/closed_form.hpp"

namespace ttdhp {

// Designers a sweep can evaluate.
enum class Designer { closed_form, baseline, fully_digital };

std::string designer_name(Designer d);
Designer parse_designer(const std::string &name); // throws std::invalid_argument

// One evaluated sweep point; per_subcarrier_gains always has grid length.
struct SweepPoint {
    std::string designer;
    std::string swept_var;
    double swept_value{0.0};
    double average_gain{0.0};
    std::vector<double> per_subcarrier_gains;
};

struct SweepOptions {
    int workers{1};
};

// (1/K) sum_k gain of the chain's effective beam at its center direction.
double average_gain(const HybridDesign &design, const ScenarioParams &sc, int chain);
std::vector<double> gain_profile(const HybridDesign &design, const ScenarioParams &sc, int chain);

/**
 * Matched-beam squint profiles for several array sizes on a fixed grid and
 * direction; the swept variable is the antenna count, designer id "matched".
 */
std::vector<SweepPoint> run_gain_pattern(const OfdmGrid &grid, double direction,
                                         std::span<const int> antenna_counts,
                                         const SweepOptions &opt = {});

/**
 * Average gain versus antenna count at a fixed delay bound. Counts must be
 * divisible by the base geometry's device count. Multi-chain scenarios get
 * one point per chain with the chain index appended to the designer id.
 */
std::vector<SweepPoint> run_nt_sweep(const ScenarioParams &base, std::span<const int> antenna_counts,
                                     std::span<const Designer> designers,
                                     const SweepOptions &opt = {});

// Average gain versus delay bound (seconds) at a fixed antenna count.
std::vector<SweepPoint> run_tmax_sweep(const ScenarioParams &base, std::span<const double> bounds_s,
                                       std::span<const Designer> designers,
                                       const SweepOptions &opt = {});

/**
 * CSV with header designer,swept_var,swept_value,avg_gain,k,gain_k; one
 * summary row per point, then (only when per_subcarrier is set) one row per
 * subcarrier with 1-based k. Floats carry 12 significant digits, so output
 * is byte-stable across worker counts.
 */
void write_csv(std::ostream &out, std::span<const SweepPoint> points, bool per_subcarrier);

} // namespace ttdhp
