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

#ifndef AQTSIM_GAUSSIAN_HPP
#define AQTSIM_GAUSSIAN_HPP

#include <complex>
#include <vector>

#include "aqtsim/symplectic.hpp"

namespace aqtsim {

/// Squeezed-ancilla description: squeeze parameter xi >= 0 applied to a
/// thermal mode of occupation n_z >= 0. The squeezed-quadrature variance is
/// nu = e^{-2 xi} (2 n_z + 1) and the conjugate one nu' = e^{+2 xi} (2 n_z
/// + 1), in vacuum-variance-1 units.
struct AncillaSpec {
    double xi = 0.0;
    double n_z = 0.0;

    double nu() const { return std::exp(-2.0 * xi) * (2.0 * n_z + 1.0); }
    double nu_prime() const { return std::exp(2.0 * xi) * (2.0 * n_z + 1.0); }
};

class GaussianState;
struct HomodyneResult;
HomodyneResult condition_on_homodyne(const GaussianState& s, int quad_index, double outcome,
                                     double efficiency);

/// Gaussian state in mean/covariance form, grouped quadrature ordering,
/// vacuum variance 1. Construction validates symmetry and physicality
/// (cov + i Omega >= 0); both tolerances scale with the covariance norm so
/// strongly squeezed pure states stay admissible.
class GaussianState {
  public:
    GaussianState(Vec mean, Mat cov);

    static GaussianState vacuum(int n_modes);
    static GaussianState coherent(const std::vector<std::complex<double>>& alphas);
    static GaussianState coherent(std::complex<double> alpha);
    /// Single mode squeezed along cos(phase) q + sin(phase) p.
    static GaussianState squeezed(const AncillaSpec& spec, double phase = 0.0);
    static GaussianState thermal(double mean_photons);
    /// Two-mode squeezed vacuum: Q blocks cosh(2 xi) I with +sinh(2 xi)
    /// cross-correlation, P blocks with -sinh(2 xi).
    static GaussianState epr(double xi);

    int n_modes() const { return n_modes_; }
    const Vec& mean() const { return mean_; }
    const Mat& cov() const { return cov_; }

    /// Marginal on the listed modes (partial trace over the rest).
    GaussianState reduced(const std::vector<int>& keep_modes) const;

  private:
    struct Unchecked {};
    GaussianState(Vec mean, Mat cov, Unchecked);

    friend GaussianState tensor(const GaussianState&, const GaussianState&);
    friend GaussianState apply_symplectic(const GaussianState&, const SymplecticMatrix&);
    friend GaussianState displace(const GaussianState&, const Vec&);
    friend struct HomodyneResult;
    friend HomodyneResult condition_on_homodyne(const GaussianState&, int, double, double);

    Vec mean_;
    Mat cov_;
    int n_modes_;
};

GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// mean -> M mean, cov -> M cov M^T.
GaussianState apply_symplectic(const GaussianState& s, const SymplecticMatrix& m);

/// mean += d, cov unchanged.
GaussianState displace(const GaussianState& s, const Vec& d);

struct HomodyneResult {
    /// Conditional state on the remaining modes; the measured mode (both
    /// quadratures) is removed. Measuring a single-mode state leaves a
    /// zero-mode placeholder whose only useful fields are the outcome stats.
    GaussianState state;
    /// Marginal mean and variance of the detected value, i.e. of
    /// sqrt(eta) x + sqrt(1-eta) x_vac. These are the likelihood parameters
    /// for the observed outcome.
    double outcome_mean = 0.0;
    double outcome_var = 0.0;
};

/// Measures the quadrature at quad_index (0..N-1 are Q's, N..2N-1 are P's)
/// with detector efficiency eta in (0, 1], modeled as a transmittance-eta
/// vacuum admixture before an ideal homodyne, and conditions the remaining
/// modes on the observed value.
HomodyneResult condition_on_homodyne(const GaussianState& s, int quad_index, double outcome,
                                     double efficiency);

/// Symplectic spectrum of a covariance matrix (each >= 1 for physical
/// states), ascending.
std::vector<double> symplectic_eigenvalues(const Mat& cov);

/// Von Neumann entropy in bits: sum of g((nu_k - 1)/2) over the symplectic
/// spectrum, g(x) = (x+1) log2(x+1) - x log2 x. Eigenvalues slightly below 1
/// are clamped; ones below the physicality tolerance raise std::domain_error.
double entropy_bits(const GaussianState& s);

/// Uhlmann fidelity (probability convention, F = overlap squared ... = 1 for
/// identical states) between two single-mode Gaussian states.
double fidelity(const GaussianState& a, const GaussianState& b);

/// Most negative eigenvalue of cov + i Omega reported as a defect (>= 0);
/// zero means the covariance is physical to round-off.
double physicality_defect(const Mat& cov);

}  // namespace aqtsim

#endif
