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

#ifndef AQTSIM_TRANSDUCER_HPP
#define AQTSIM_TRANSDUCER_HPP

#include <variant>
#include <vector>

#include "aqtsim/errors.hpp"
#include "aqtsim/gaussian.hpp"
#include "aqtsim/symplectic.hpp"

namespace aqtsim {

/// Lossy mode converter: the signal rides the straight-through path with
/// amplitude sqrt(T).
struct BeamSplitterSpec {
    double transmittance = 0.5;  // T in [0, 1]
};

/// Amplifying mode converter: the signal rides the cross (conversion) path
/// with gain T' >= 1, so the resolved scattering is a squeezer of
/// cosh^2 = T' + 1 with its output ports swapped into signal position.
struct TwoModeSqueezerSpec {
    double transmittance = 1.0;  // T' >= 1
};

/// Two internal modes with bilinear couplings g (beam-splitter type) and
/// g_prime (parametric type), external couplings kappa1/kappa2, probed at
/// detuning delta_omega from the drive. Conversion happens on the cross
/// path, so the resolved scattering swaps the output ports. Rates share one
/// unit (only ratios matter).
struct PhysicalCavitySpec {
    double g = 0.0;
    double g_prime = 0.0;
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double delta_omega = 0.0;
};

/// User-provided scattering network with an explicit partition.
struct CustomSpec {
    SymplecticMatrix s;
    ModePartition partition;
};

using ConverterSpec =
    std::variant<BeamSplitterSpec, TwoModeSqueezerSpec, PhysicalCavitySpec, CustomSpec>;

struct ResolvedConverter {
    SymplecticMatrix s;
    ModePartition partition;
};

/// Builds the scattering matrix and default partition for a converter.
/// Throws std::domain_error for out-of-range parameters and ModelError when
/// the physical cavity cannot be reduced to a real symplectic map (detuned
/// and parametric at the same time).
ResolvedConverter resolve_scattering(const ConverterSpec& c);

/// Per-ancilla squeezing imperfection and per-idler detector efficiency.
struct ImperfectionParams {
    std::vector<double> xi;   // squeeze parameter >= 0 (may be +inf for ideal)
    std::vector<double> n_z;  // thermal occupation before squeezing, >= 0
    std::vector<double> eta;  // detector efficiency in (0, 1]

    static ImperfectionParams uniform(int n, double xi, double n_z, double eta);
    /// xi = +inf, n_z = 0, eta = 1: nu and mu both vanish.
    static ImperfectionParams ideal(int n);

    void validate(int n) const;
    std::vector<double> nu() const;        // e^{-2 xi} (2 n_z + 1)
    std::vector<double> nu_prime() const;  // e^{+2 xi} (2 n_z + 1)
    std::vector<double> mu() const;        // (1 - eta) / eta
};

double db_to_linear(double db);
double linear_to_db(double value);

/// Uniform imperfections hitting exact targets nu (squeezed-quadrature
/// variance) and mu (detector noise factor): nu <= 1 is reached by pure
/// squeezing, nu > 1 by a thermal ancilla, and eta = 1 / (1 + mu).
ImperfectionParams imperfections_for(int n, double nu, double mu);

/// Feedforward choice for a partitioned scattering network. f_star holds the
/// unit-efficiency gains; f = f_star diag(eta^{-1/2}) compensates detector
/// loss on the measured outcomes.
struct AQTPlan {
    ModePartition partition;
    Mat f_star;  // 2m x n
    Mat f;       // 2m x n
};

/// Computes the displacement gains that cancel the anti-squeezed ancilla
/// quadratures from the signal output:
///   F* = -[S_{b,z'}; S_{b',z'}] (S_{h,z'})^{-1}.
/// Throws PlanningError when S_{h,z'} has condition number >= 1e8 (a bad
/// choice of squeezed/measured quadratures).
AQTPlan plan_feedforward(const SymplecticMatrix& s, const ModePartition& p,
                         const std::vector<double>& eta);
AQTPlan plan_feedforward(const SymplecticMatrix& s, const ModePartition& p, double eta = 1.0);

/// Residual input->output map after feedforward:
///   S~ = [[S_{b,a}, S_{b,a'}]; [S_{b',a}, S_{b',a'}]] + F* [S_{h,a}, S_{h,a'}].
/// Validated symplectic at 1e-9; failure raises ModelError with the defect.
SymplecticMatrix effective_scattering(const SymplecticMatrix& s, const AQTPlan& plan);

/// Added-noise covariance of the recovered channel,
///   V = B* diag(nu) B*^T + S~^{-1} F* diag(mu) F*^T S~^{-T},
/// with B* = [(S^{-1})_{a,h'}; (S^{-1})_{a',h'}] ((S^{-1})_{z,h'})^{-1}.
Mat noise_covariance(const SymplecticMatrix& s, const ModePartition& p, const AQTPlan& plan,
                     const ImperfectionParams& imp);

/// Gaussian channel x -> X x + d + n, n ~ N(0, V), on m modes.
struct EffectiveChannel {
    Mat x;
    Mat v;
    Vec d;
    int m = 1;
};

/// Most negative eigenvalue of V + i Omega - i X Omega X^T (>= 0 required
/// for complete positivity), reported as a defect.
double channel_cp_defect(const EffectiveChannel& ch);
bool channel_is_physical(const EffectiveChannel& ch, double tol = 1e-9);

/// Direct transduction: signal in, signal out, vacuum ancillas traced out.
/// X is the signal subblock of the scattering matrix and V the noise forced
/// by the discarded ports.
EffectiveChannel dqt_channel(const ConverterSpec& c);

/// Adaptive transduction reported in the recovered frame: X = I, d = 0, and
/// all imperfection sits in V. With nu = mu = 0 this is the exact identity
/// channel whatever the matching defect.
EffectiveChannel aqt_channel(const ConverterSpec& c, const ImperfectionParams& imp);

/// Applies an m-mode channel to the listed modes of a larger state.
GaussianState apply_channel(const EffectiveChannel& ch, const GaussianState& s,
                            const std::vector<int>& modes);

}  // namespace aqtsim

#endif
