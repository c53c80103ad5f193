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

#include "aqtsim/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "aqtsim/rng.hpp"

namespace aqtsim {

namespace {

// nu = e^{-2 xi} (2 n_z + 1): with n_z = 0, a target nu fixes xi directly.
double xi_for_nu(double nu) { return -0.5 * std::log(nu); }

// mu = (1 - eta) / eta.
double eta_for_mu(double mu) { return 1.0 / (1.0 + mu); }

}  // namespace

Scenario minimal_bs_scenario() {
    Scenario sc;
    sc.name = "minimal-bs";
    sc.converter = BeamSplitterSpec{0.8};
    sc.imp = ImperfectionParams::uniform(1, xi_for_nu(0.1), 0.0, eta_for_mu(1.0));
    return sc;
}

Scenario minimal_tms_scenario() {
    Scenario sc;
    sc.name = "minimal-tms";
    sc.converter = TwoModeSqueezerSpec{10.0};
    sc.imp = ImperfectionParams::uniform(1, xi_for_nu(0.1), 0.0, eta_for_mu(0.1));
    return sc;
}

Scenario teleport_scenario() {
    // Mode 0 mixes with ancilla 1, ancilla 1 with ancilla 2, then the
    // permutation parks the surviving signal combination in slot 0. With
    // squeeze phases {0, pi/2} the two ancillas protect conjugate signal
    // quadratures, and both measured combinations admit exact feedforward.
    SymplecticMatrix net =
        mode_permutation({2, 0, 1}) *
        embed(beam_splitter(0.5), 3, {0, 1}) *
        embed(beam_splitter(0.5), 3, {1, 2});
    ModePartition part;
    part.m = 1;
    part.n = 2;
    part.squeeze_phases = {0.0, M_PI / 2.0};
    part.measure_phases = {0.0, M_PI / 2.0};

    Scenario sc;
    sc.name = "teleport-n2";
    sc.converter = CustomSpec{net, part};
    sc.imp = ImperfectionParams::uniform(2, 1.0, 0.0, 1.0);
    return sc;
}

std::vector<std::string> scenario_names() {
    return {"minimal-bs", "minimal-tms", "teleport-n2"};
}

Scenario scenario_by_name(const std::string& name) {
    if (name == "minimal-bs") {
        return minimal_bs_scenario();
    }
    if (name == "minimal-tms") {
        return minimal_tms_scenario();
    }
    if (name == "teleport-n2") {
        return teleport_scenario();
    }
    throw std::invalid_argument(
        "unknown scenario '" + name +
        "' (known: minimal-bs, minimal-tms, teleport-n2)");
}

VerifyReport run_verify(const Scenario& sc, std::int64_t n_traj, std::uint64_t seed,
                        int n_threads) {
    TrajectoryConfig cfg;
    cfg.n_traj = n_traj;
    cfg.seed = seed;
    cfg.converter = sc.converter;
    cfg.imp = sc.imp;
    cfg.n_threads = n_threads;

    VerifyReport rep;
    rep.scenario = sc.name;
    rep.empirical = run_trajectories(cfg);
    rep.v_analytic = aqt_channel(sc.converter, sc.imp).v;

    const int dim = static_cast<int>(rep.v_analytic.rows());
    rep.z_v = Mat(dim, dim);
    rep.z_x = Mat(dim, dim);
    rep.max_abs_z = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            rep.z_v(i, j) = (rep.empirical.v_hat(i, j) - rep.v_analytic(i, j)) /
                            rep.empirical.v_stderr(i, j);
            const double target = (i == j) ? 1.0 : 0.0;
            rep.z_x(i, j) = (rep.empirical.x_hat(i, j) - target) /
                            rep.empirical.x_stderr(i, j);
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(rep.z_v(i, j)));
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(rep.z_x(i, j)));
        }
    }
    rep.pass = rep.max_abs_z < 4.0;
    return rep;
}

SymplecticCheckReport run_random_symplectic_check(int draws, std::uint64_t seed) {
    SymplecticCheckReport rep;
    Rng rng(seed);
    const int max_attempts = draws * 10 + 100;
    int attempts = 0;
    while (rep.draws < draws && attempts < max_attempts) {
        ++attempts;
        const int m = 1 + static_cast<int>(rng.next_u64() % 2);
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        SymplecticMatrix s = random_symplectic(m + n, rng);
        ModePartition part;
        part.m = m;
        part.n = n;
        part.squeeze_phases.resize(static_cast<std::size_t>(n));
        part.measure_phases.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            part.squeeze_phases[static_cast<std::size_t>(j)] =
                rng.uniform(0.0, 2.0 * M_PI);
            part.measure_phases[static_cast<std::size_t>(j)] =
                rng.uniform(0.0, 2.0 * M_PI);
        }
        AQTPlan plan;
        try {
            plan = plan_feedforward(s, part);
        } catch (const PlanningError&) {
            ++rep.planning_rejections;
            continue;
        }
        ++rep.draws;
        try {
            SymplecticMatrix s_eff = effective_scattering(s, plan);
            rep.max_defect =
                std::max(rep.max_defect, symplectic_defect(s_eff.matrix()));
        } catch (const ModelError& e) {
            ++rep.failures;
            rep.max_defect = std::max(rep.max_defect, e.defect());
        }
    }
    rep.pass = rep.failures == 0 && rep.draws == draws;
    return rep;
}

}  // namespace aqtsim
