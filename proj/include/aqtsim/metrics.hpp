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

#ifndef AQTSIM_METRICS_HPP
#define AQTSIM_METRICS_HPP

#include <string>

#include "aqtsim/transducer.hpp"

namespace aqtsim {

struct CapacityEstimate {
    double lower_bound = 0.0;  // bits per channel use, clamped at 0
    double argmax_input_photons = 0.0;
    /// The best input sat on the upper edge of the search grid, so the true
    /// supremum lies beyond it (e.g. a noiseless channel).
    bool diverged = false;
    std::string grid_meta;
};

/// True when the coherent-state fidelity of the channel does not depend on
/// the input amplitude (deterministic part equal to identity).
bool fidelity_mean_independent(const EffectiveChannel& ch);

/// Mean input/output fidelity over a Gaussian ensemble of coherent states
/// with mean photon number prior_photons. When the deterministic part is the
/// identity the result is independent of the ensemble (equals the uniform
/// average 2 / sqrt(det(2I + V)) for d = 0); otherwise the uniform limit
/// degenerates and the prior width matters.
double average_coherent_fidelity(const EffectiveChannel& ch, double prior_photons = 10.0);

/// average_coherent_fidelity of the direct-transduction channel.
double dqt_fidelity(const ConverterSpec& c, double prior_photons = 10.0);

/// One-shot coherent information in bits for a thermal input of
/// input_photons mean photons, purified by a two-mode squeezed state:
/// S(output) - S(output, reference).
double coherent_information(const EffectiveChannel& ch, double input_photons);

/// Maximizes coherent information over a log-spaced input-photon grid
/// [1e-2, 1e4] (200 points) with golden-section refinement around the grid
/// argmax, clamped at 0. For additive-noise channels (deterministic part I)
/// the search runs in the noise's symplectic frame, which is equivalent to
/// also optimizing the input squeezing and makes the bound a function of
/// det V alone.
CapacityEstimate capacity_lower_bound(const EffectiveChannel& ch);

/// Closed-form bound on the imperfection product mu * nu below which the
/// adaptive protocol retains positive capacity: 4 / (9 (T + 1/T - 2)) for a
/// beam-splitter converter with T in (0, 1) and 4 / (9 (T' + 1/T' + 2)) for
/// a two-mode-squeezer converter with T' > 1.
double capacity_threshold(const ConverterSpec& c);

}  // namespace aqtsim

#endif
