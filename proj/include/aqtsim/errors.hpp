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

#ifndef AQTSIM_ERRORS_HPP
#define AQTSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aqtsim {

/// Feedforward planning failed, typically because a block that must be
/// inverted is singular or ill-conditioned. The message names the block.
class PlanningError : public std::runtime_error {
  public:
    explicit PlanningError(const std::string& what) : std::runtime_error(what) {}
};

/// A physical model produced something the simulation cannot represent,
/// e.g. a non-symplectic scattering matrix. Carries the defect magnitude.
class ModelError : public std::runtime_error {
  public:
    ModelError(const std::string& what, double defect)
        : std::runtime_error(what), defect_(defect) {}
    double defect() const { return defect_; }

  private:
    double defect_;
};

/// Fock-space truncation left too much probability outside the cutoff.
class TruncationError : public std::runtime_error {
  public:
    TruncationError(const std::string& what, int suggested_dim)
        : std::runtime_error(what), suggested_dim_(suggested_dim) {}
    int suggested_dim() const { return suggested_dim_; }

  private:
    int suggested_dim_;
};

}  // namespace aqtsim

#endif
