// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "ttdhp/qp_oracle.hpp"

using namespace ttdhp;

namespace {

ScenarioParams make_scenario(int nt, int m_ttd, double psi, double tmax_ps,
                             double bw_ratio = 0.1, int k = 129) {
    const double fc = 300e9;
    return {OfdmGrid(fc, bw_ratio * fc, k),
            ArrayGeometry::half_wavelength(nt, m_ttd, 1, fc),
            {psi},
            tmax_ps * 1e-12};
}

} // namespace

TEST_CASE("instance aggregates have the structured closed form") {
    const ScenarioParams sc = make_scenario(64, 4, 0.7, 200.0);
    const QpInstance inst = build_instance(sc, 0);
    REQUIRE(inst.gram.rows() == 17);
    REQUIRE(inst.gram.cols() == 17);
    REQUIRE(inst.linear.cols() == 4);
    CHECK(!inst.degenerate);
    // Numeric accumulation must land on the analytic blocks: identity,
    // minus mean-ratio coupling, N * mean(ratio^2) corner.
    const GramConstants gc = gram_constants(sc.grid, 16);
    CHECK((inst.gram.topLeftCorner(16, 16) - Eigen::MatrixXd::Identity(16, 16))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((inst.gram.topRightCorner(16, 1).array() + 1.0).abs().maxCoeff() < 1e-14);
    CHECK(inst.gram(16, 16) == doctest::Approx(gc.corner).epsilon(1e-14));
    CHECK(inst.theta_max == doctest::Approx(sc.normalized_bound()).epsilon(1e-15));
    CHECK(inst.ramp(3, 2) == doctest::Approx((2 * 16 + 3) * 0.7).epsilon(1e-15));
    CHECK_THROWS_AS(build_instance(sc, 1), std::out_of_range);
}

TEST_CASE("oracle lands on the interior closed form under a generous bound") {
    const ScenarioParams sc = make_scenario(256, 16, 0.8, 340.0);
    const QpInstance inst = build_instance(sc, 0);
    const QpSolution sol = solve_numeric(inst);
    REQUIRE(sol.branch.size() == 16);
    const HybridDesign d = optimal_design(sc);
    for (int m = 0; m < 16; ++m) {
        CHECK(sol.branch[m] == Branch::interior);
        CHECK(std::abs(sol.vars(16, m) - d.normalized_delay(0, m, 300e9)) < 1e-9);
        for (int n = 0; n < 16; ++n)
            CHECK(std::abs(sol.vars(n, m) - d.ps_phase(0, m, n)) < 1e-9);
    }
    CHECK(sol.kkt_residual < 1e-10);
}

TEST_CASE("oracle pins the delay at the bound when the target leaves the box") {
    const ScenarioParams sc = make_scenario(256, 16, 0.8, 100.0);
    const QpSolution sol = solve_numeric(build_instance(sc, 0));
    const HybridDesign d = optimal_design(sc);
    int upper = 0;
    for (int m = 0; m < 16; ++m) {
        if (sol.branch[m] == Branch::upper) {
            ++upper;
            CHECK(sol.vars(16, m) == doctest::Approx(sc.normalized_bound()).epsilon(1e-12));
        }
        for (int n = 0; n < 16; ++n)
            CHECK(std::abs(sol.vars(n, m) - d.ps_phase(0, m, n)) < 1e-8);
    }
    CHECK(upper == 11); // subarrays 5..15 saturate at this bound
    CHECK(sol.kkt_residual < 1e-8);
}

TEST_CASE("broadside direction pins the delay at zero") {
    const ScenarioParams sc = make_scenario(64, 4, 0.0, 100.0);
    const QpSolution sol = solve_numeric(build_instance(sc, 0));
    for (int m = 0; m < 4; ++m) {
        CHECK(sol.vars.col(m).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(sol.branch[m] != Branch::upper);
    }
}

TEST_CASE("degenerate grids are flagged and refused") {
    const ScenarioParams flat = {OfdmGrid(300e9, 0.0, 1),
                                 ArrayGeometry::half_wavelength(64, 4, 1, 300e9),
                                 {0.5},
                                 100e-12};
    const QpInstance inst = build_instance(flat, 0);
    CHECK(inst.degenerate);
    CHECK_THROWS_AS(solve_numeric(inst), std::invalid_argument);
    CHECK(verify_against_closed_form(flat).skipped);
}

TEST_CASE("projected gradient stays feasible and near the optimum at defaults") {
    const ScenarioParams sc = make_scenario(64, 4, 0.62, 35.0, 0.05);
    const QpInstance inst = build_instance(sc, 0);
    const QpSolution exact = solve_numeric(inst);
    const QpSolution pg = solve_projected_gradient(inst);
    for (int m = 0; m < 4; ++m) {
        CHECK(pg.vars(16, m) >= 0.0);
        CHECK(pg.vars(16, m) <= inst.theta_max);
        // Gradient iterations can stall short of the minimizer but never below it.
        CHECK(pg.objective[m] >= exact.objective[m] - 1e-10);
    }
}

TEST_CASE("projected gradient tightens with budget up to the rounding floor") {
    const ScenarioParams sc = make_scenario(16, 4, 0.8, 30.0, 0.2, 33);
    const QpInstance inst = build_instance(sc, 0);
    const QpSolution exact = solve_numeric(inst);
    // rel_tol 0 disables the objective-flat early stop. The iteration still
    // stalls once the per-step objective decrease falls under one ulp of the
    // objective value, so coordinate agreement bottoms out well above the
    // factorized solve; the budgeted run must beat the default run clearly.
    const QpSolution coarse = solve_projected_gradient(inst);
    const QpSolution fine = solve_projected_gradient(inst, 300000, 0.0);
    const double coarse_gap = (coarse.vars - exact.vars).cwiseAbs().maxCoeff();
    const double fine_gap = (fine.vars - exact.vars).cwiseAbs().maxCoeff();
    CHECK(fine_gap < 1e-3);
    CHECK(fine_gap < coarse_gap / 4.0);
    for (int m = 0; m < 4; ++m)
        CHECK(fine.objective[m] <= exact.objective[m] + 1e-8 * std::abs(exact.objective[m]));
}

TEST_CASE("stack residual agrees with the quadratic objective up to a constant") {
    const ScenarioParams sc = make_scenario(32, 4, 0.44, 75.0);
    const QpInstance inst = build_instance(sc, 0);
    const QpSolution sol = solve_numeric(inst);
    // stack_residual(vars) - sum_m quad_objective = (1/K) sum_k |target_k|^2.
    double quad_sum = 0.0;
    for (int m = 0; m < 4; ++m)
        quad_sum += inst.quad_objective(sol.vars.col(m), m);
    double target_norm = 0.0;
    for (int k = 0; k < sc.grid.subcarrier_count(); ++k)
        target_norm += inst.target(k).squaredNorm();
    target_norm /= sc.grid.subcarrier_count();
    // The two sides cancel the large target norm differently; tolerance is
    // absolute in units of that norm.
    CHECK(std::abs(inst.stack_residual(sol.vars) - (quad_sum + target_norm)) <
          1e-12 * std::max(1.0, target_norm));
}

TEST_CASE("verification accepts the closed form and rejects a perturbed design") {
    const ScenarioParams sc = make_scenario(128, 8, 0.53, 180.0);
    const VerifyReport clean = verify_against_closed_form(sc);
    CHECK(clean.pass());
    CHECK(clean.coordinate_gap < 1e-8);
    CHECK(clean.objective_gap < 1e-10);
    CHECK(clean.interior_count + clean.boundary_count == 8);

    HybridDesign d = optimal_design(sc);
    std::vector<double> phases = d.ps_phases();
    phases[5] += 1e-3;
    const HybridDesign off(sc.geom, phases, d.delays_s(), sc.delay_bound_s);
    const VerifyReport bad = verify_design(sc, off);
    CHECK(!bad.pass());
    CHECK(bad.coordinate_gap >= 1e-3 - 1e-9);
}

TEST_CASE("negative directions verify at their magnitude") {
    const ScenarioParams sc = make_scenario(128, 8, -0.53, 180.0);
    const VerifyReport report = verify_against_closed_form(sc);
    CHECK(report.pass());
    CHECK(report.coordinate_gap < 1e-8);
}

TEST_CASE("chord identity and ordering agreement") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> offset(-3.0, 3.0);
    std::vector<double> samples(1000);
    const double x0 = 0.4;
    for (double &s : samples)
        s = x0 + offset(rng);
    const OrderingReport report = chord_order_check(x0, samples);
    CHECK(report.identity_error < 1e-12);
    CHECK(report.order_agrees);
}
