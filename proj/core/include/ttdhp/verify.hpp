// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "ttdhp/closed_form.hpp"

namespace ttdhp {

struct BatchSpec {
    std::uint64_t seed{42};
    int count{100};
    // Perturbs one closed-form delay coordinate before comparison; the batch
    // must then fail. Negative control for the verification plumbing.
    bool inject_fault{false};
};

struct BatchOutcome {
    int scenarios{0};
    int skipped{0};
    int interior_count{0};
    int boundary_count{0};
    int regime_flagged{0};

    double worst_coordinate_gap{0.0};
    double worst_objective_gap{0.0};
    double worst_kkt_residual{0.0};
    double worst_schur_error{0.0};   // relative, closed form vs numeric Schur complement
    double worst_target_error{0.0};  // delay target vs numeric solve, absolute
    double worst_inverse_error{0.0}; // |closed-form inverse * numeric gram - I|_inf
    double worst_flip_error{0.0};    // per-subcarrier gain mismatch under the sign flip
    double chord_identity_error{0.0};
    bool chord_order_ok{true};

    bool pass{false};
    std::string summary() const;
};

// Full property sweep over one scenario: oracle agreement, closed-form Gram
// constants against their numeric counterparts, sign-flip gain equality.
// Degenerate grids (zero bandwidth or a single subcarrier) are recorded as
// skipped, not failed.
BatchOutcome run_verify_scenario(const ScenarioParams &sc, bool inject_fault = false);

// Seeded randomized batch of scenarios drawn over direction in [0, 1],
// ps_per_ttd and devices in {2,4,8,16}, subcarriers in {17,33,129},
// bandwidth ratio in {0.05,0.1,0.2}, normalized bound log-uniform in
// [1e-2, 1e3]; includes one chord-ordering check on 1000 samples.
BatchOutcome run_verify_batch(const BatchSpec &spec);

} // namespace ttdhp
