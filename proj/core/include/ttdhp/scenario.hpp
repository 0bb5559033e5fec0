// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ttdhp/closed_form.hpp"

namespace ttdhp {

/**
 * Flat key/value scenario file: UTF-8 `key = value` lines, `#` comments.
 * Units are explicit in the key names and converted to SI at this boundary.
 * Every key is optional; defaults describe the reference experiment setup.
 */
struct ScenarioFile {
    double fc_ghz{300.0};
    double bandwidth_ghz{30.0};
    int subcarriers{129};
    int nt{256};
    int m_ttd{16};
    int n_rf{1};
    std::vector<double> psi_c{0.8};
    double tmax_ps{340.0};
    std::uint64_t seed{42};
};

// Throws std::invalid_argument with the offending line on malformed input,
// unknown keys, or duplicate keys.
ScenarioFile parse_scenario_text(std::string_view text);
ScenarioFile parse_scenario_file(const std::string &path);

// SI conversion plus full validation of the assembled parameters.
ScenarioParams to_params(const ScenarioFile &file);

} // namespace ttdhp
