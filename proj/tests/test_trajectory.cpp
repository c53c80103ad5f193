// Copyright 2026 The aqt-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "aqtsim/scenarios.hpp"
#include "aqtsim/trajectory.hpp"

using namespace aqtsim;

namespace {

TrajectoryConfig config_for(const Scenario& sc, std::int64_t n_traj,
                            std::uint64_t seed) {
    TrajectoryConfig cfg;
    cfg.converter = sc.converter;
    cfg.imp = sc.imp;
    cfg.n_traj = n_traj;
    cfg.seed = seed;
    return cfg;
}

void check_against(const EmpiricalChannel& emp, const Mat& v_expected) {
    const int d = static_cast<int>(emp.x_hat.rows());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double want_x = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(emp.x_hat(i, j) - want_x) <=
                  4.0 * emp.x_stderr(i, j));
            CHECK(std::abs(emp.v_hat(i, j) - v_expected(i, j)) <=
                  4.0 * emp.v_stderr(i, j));
        }
    }
}

}  // namespace

TEST_CASE("strong squeezing and perfect detection recover the identity") {
    TrajectoryConfig cfg;
    cfg.converter = BeamSplitterSpec{0.3};
    cfg.imp = ImperfectionParams::uniform(1, 10.0, 0.0, 1.0);
    cfg.n_traj = 100000;
    cfg.seed = 11;
    EmpiricalChannel emp = run_trajectories(cfg);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double want = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(emp.x_hat(i, j) - want) <= 4.0 * emp.x_stderr(i, j));
            // The map estimate enters the residual quadratically, so the
            // noise floor is O(x_stderr^2), not zero.
            CHECK(std::abs(emp.v_hat(i, j)) < 1e-4);
        }
    }
}

TEST_CASE("sampled noise matches the analytic channel") {
    Scenario sc = minimal_bs_scenario();
    EmpiricalChannel emp = run_trajectories(config_for(sc, 200000, 3));
    Mat v = aqt_channel(sc.converter, sc.imp).v;
    CHECK(v(0, 0) == doctest::Approx(0.025));
    CHECK(v(1, 1) == doctest::Approx(0.2));
    check_against(emp, v);
}

TEST_CASE("two measured ancillas produce isotropic recovered noise") {
    Scenario sc = teleport_scenario();
    EmpiricalChannel emp = run_trajectories(config_for(sc, 100000, 5));
    Mat v = aqt_channel(sc.converter, sc.imp).v;
    CHECK(v(0, 0) == doctest::Approx(2.0 * std::exp(-2.0)));
    check_against(emp, v);
}

TEST_CASE("result does not depend on the number of worker threads") {
    Scenario sc = minimal_tms_scenario();
    TrajectoryConfig cfg = config_for(sc, 50000, 17);
    cfg.n_threads = 1;
    EmpiricalChannel a = run_trajectories(cfg);
    cfg.n_threads = 8;
    EmpiricalChannel b = run_trajectories(cfg);
    CHECK((a.x_hat.array() == b.x_hat.array()).all());
    CHECK((a.v_hat.array() == b.v_hat.array()).all());
    CHECK((a.x_stderr.array() == b.x_stderr.array()).all());
    CHECK((a.v_stderr.array() == b.v_stderr.array()).all());
    CHECK((a.outcome_mean.array() == b.outcome_mean.array()).all());
    CHECK((a.outcome_var.array() == b.outcome_var.array()).all());
}

TEST_CASE("standard errors shrink as one over sqrt of the sample count") {
    Scenario sc = minimal_bs_scenario();
    EmpiricalChannel small = run_trajectories(config_for(sc, 40000, 23));
    EmpiricalChannel big = run_trajectories(config_for(sc, 80000, 23));
    const double rx = small.x_stderr(0, 0) / big.x_stderr(0, 0);
    const double rv = small.v_stderr(1, 1) / big.v_stderr(1, 1);
    CHECK(rx > 1.3);
    CHECK(rx < 1.55);
    CHECK(rv > 1.3);
    CHECK(rv < 1.55);
}

TEST_CASE("detected idler moments match the propagated marginal") {
    Scenario sc = minimal_bs_scenario();
    EmpiricalChannel emp = run_trajectories(config_for(sc, 100000, 29));

    ResolvedConverter rc = resolve_scattering(sc.converter);
    const int n2 = 2 * (rc.partition.m + rc.partition.n);
    Mat s_rot = output_rotation(rc.partition, n2 / 2).matrix() *
                rc.s.matrix() *
                input_rotation(rc.partition, n2 / 2).matrix().transpose();
    // Within-group input variances: unit signal quadratures, then the
    // squeezed and anti-squeezed ancilla quadratures.
    Vec var_in(4);
    var_in << 1.0, sc.imp.nu()[0], 1.0, sc.imp.nu_prime()[0];
    double var_h = 0.0;
    for (int j = 0; j < 4; ++j) {
        var_h += s_rot(3, j) * s_rot(3, j) * var_in(j);
    }
    const double eta = sc.imp.eta[0];
    const double expected = eta * var_h + (1.0 - eta);

    CHECK(std::abs(emp.outcome_var(0) - expected) < 0.1);
    CHECK(std::abs(emp.outcome_mean(0)) < 0.05);
}

TEST_CASE("trajectory count and probe amplitude are validated") {
    Scenario sc = minimal_bs_scenario();
    TrajectoryConfig cfg = config_for(sc, 9, 0);
    CHECK_THROWS_AS(run_trajectories(cfg), std::invalid_argument);
    cfg.n_traj = 1000;
    cfg.probe_amplitude = 0.0;
    CHECK_THROWS_AS(run_trajectories(cfg), std::invalid_argument);
}

TEST_CASE("verification harness agrees with the analytic prediction") {
    VerifyReport rep = run_verify(minimal_tms_scenario(), 100000, 41);
    CHECK(rep.pass);
    CHECK(rep.max_abs_z < 4.0);
    CHECK(rep.v_analytic(0, 0) == doctest::Approx(0.11));
    CHECK(rep.v_analytic(1, 1) == doctest::Approx(1.1));
}

TEST_CASE("scenario registry") {
    CHECK(scenario_names().size() == 3);
    CHECK(scenario_by_name("teleport-n2").name == "teleport-n2");
    CHECK_THROWS_AS(scenario_by_name("nope"), std::invalid_argument);
}

TEST_CASE("random network audit accepts every planned residual map") {
    SymplecticCheckReport rep = run_random_symplectic_check(50, 2026);
    CHECK(rep.draws == 50);
    CHECK(rep.failures == 0);
    CHECK(rep.max_defect < 1e-9);
    CHECK(rep.pass);
}
