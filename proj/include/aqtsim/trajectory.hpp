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

#ifndef AQTSIM_TRAJECTORY_HPP
#define AQTSIM_TRAJECTORY_HPP

#include <cstdint>

#include "aqtsim/transducer.hpp"

namespace aqtsim {

/// Monte-Carlo run description. Results are a pure function of the config:
/// trajectory k draws from its own counter stream keyed by (seed, k), and
/// accumulation reduces fixed-size chunks in index order, so the outcome is
/// bit-identical for any worker count.
struct TrajectoryConfig {
    std::int64_t n_traj = 100000;
    std::uint64_t seed = 0;
    ConverterSpec converter;
    ImperfectionParams imp;
    /// 0 picks the hardware concurrency.
    int n_threads = 0;
    /// Input probe displacement used to estimate the deterministic map: each
    /// trajectory centers its coherent input at +-amplitude along one input
    /// quadrature, cycling through all probes.
    double probe_amplitude = 2.0;
};

/// Sampled estimate of the recovered channel. With correct analytics the
/// deterministic map is the identity and the residual covariance matches the
/// closed-form noise.
struct EmpiricalChannel {
    Mat x_hat;     // probe-difference estimate of the deterministic map
    Mat v_hat;     // pooled residual covariance after removing x_hat
    Mat x_stderr;  // per-entry standard errors of x_hat
    Mat v_stderr;  // per-entry standard errors of v_hat
    Vec outcome_mean;  // detected idler value, averaged over all trajectories
    Vec outcome_var;   // pooled within-probe-group variance of that value
    std::int64_t n_traj = 0;
};

/// Samples the full protocol trajectory by trajectory: draw input and
/// squeezed ancillas, scatter, detect the idlers with efficiency-limited
/// homodyne, displace by the feedforward gains, undo the residual map.
/// Throws std::invalid_argument for n_traj < 10 and propagates planning
/// errors from the feedforward step.
EmpiricalChannel run_trajectories(const TrajectoryConfig& cfg);

}  // namespace aqtsim

#endif
