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

#ifndef AQTSIM_FOCK_HPP
#define AQTSIM_FOCK_HPP

#include <Eigen/Dense>

#include "aqtsim/gaussian.hpp"

namespace aqtsim {

/// Number-basis density matrix of a single-mode Gaussian state, built as a
/// displaced, rotated, squeezed thermal state with truncation dimension dim.
/// Throws TruncationError when the tail mass left outside the cutoff exceeds
/// 1e-8.
Eigen::MatrixXcd fock_density(const GaussianState& s, int dim = 40);

/// Uhlmann fidelity between two single-mode Gaussian states evaluated by
/// dense number-basis truncation. This is a deliberately independent route
/// from the phase-space closed forms; it exists to certify them at desk
/// scale.
double fock_overlap(const GaussianState& a, const GaussianState& b, int dim = 40);

}  // namespace aqtsim

#endif
