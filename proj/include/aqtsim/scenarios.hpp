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

#ifndef AQTSIM_SCENARIOS_HPP
#define AQTSIM_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aqtsim/trajectory.hpp"
#include "aqtsim/transducer.hpp"

namespace aqtsim {

/// Named converter + imperfection combination used by the verification
/// harness and the CLI.
struct Scenario {
    std::string name;
    ConverterSpec converter;
    ImperfectionParams imp;
};

/// Beam splitter T = 0.8 with 10 dB ancilla squeezing and 50% efficient
/// detection (nu = 0.1, mu = 1).
Scenario minimal_bs_scenario();

/// Two-mode squeezer T' = 10 with 10 dB ancilla squeezing and 10 dB
/// detector loss factor (nu = 0.1, mu = 0.1).
Scenario minimal_tms_scenario();

/// One signal mode routed through two balanced beam splitters onto a pair of
/// measured ancillas (a continuous-variable teleportation loop): m = 1,
/// n = 2, squeeze phases {0, pi/2}, measure phases {0, pi/2}, finite
/// squeezing xi = 1, ideal detectors. The recovered noise is isotropic,
/// V = 2 e^{-2 xi} I.
Scenario teleport_scenario();

std::vector<std::string> scenario_names();

/// Throws std::invalid_argument (listing the known names) for a miss.
Scenario scenario_by_name(const std::string& name);

/// Side-by-side comparison of the sampled channel against the closed-form
/// prediction, in units of estimated standard errors.
struct VerifyReport {
    std::string scenario;
    EmpiricalChannel empirical;
    Mat v_analytic;
    Mat z_v;  // (v_hat - v_analytic) / v_stderr
    Mat z_x;  // (x_hat - I) / x_stderr
    double max_abs_z = 0.0;
    bool pass = false;  // every |z| < 4
};

VerifyReport run_verify(const Scenario& sc, std::int64_t n_traj, std::uint64_t seed,
                        int n_threads = 0);

/// Stress result for the planner: random networks, random partitions, and a
/// symplecticity audit of every residual map the planner accepts.
struct SymplecticCheckReport {
    int draws = 0;
    int planning_rejections = 0;  // near-singular measured blocks, redrawn
    int failures = 0;             // accepted plans with a non-symplectic residual
    double max_defect = 0.0;
    bool pass = false;  // no failures
};

/// Draws `draws` random networks with 1..2 signal and 1..3 ancilla modes,
/// random quadrature phases, plans feedforward at unit efficiency, and
/// checks the residual map of every accepted plan.
SymplecticCheckReport run_random_symplectic_check(int draws, std::uint64_t seed);

}  // namespace aqtsim

#endif
