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

#ifndef AQTSIM_SYMPLECTIC_HPP
#define AQTSIM_SYMPLECTIC_HPP

#include <vector>

#include <Eigen/Dense>

#include "aqtsim/rng.hpp"

namespace aqtsim {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Quadrature ordering is "grouped" throughout this library: for N modes the
// vector is (q_1..q_N, p_1..p_N), vacuum variance is 1 per quadrature, and
// the symplectic form is Omega = [[0, I_N], [-I_N, 0]].
inline constexpr double kSymplecticTol = 1e-9;

/// Omega for n_modes modes in grouped ordering.
Mat symplectic_form(int n_modes);

/// Frobenius norm of M Omega M^T - Omega. Throws std::invalid_argument for a
/// non-square or odd-dimensioned M.
double symplectic_defect(const Mat& m);

bool is_symplectic(const Mat& m, double tol = kSymplecticTol);

/// A real linear mode transformation validated to preserve Omega.
class SymplecticMatrix {
  public:
    /// Validates shape and symplecticity (tolerance kSymplecticTol).
    explicit SymplecticMatrix(Mat m);

    static SymplecticMatrix identity(int n_modes);

    int n_modes() const { return n_modes_; }
    int dim() const { return 2 * n_modes_; }
    const Mat& matrix() const { return m_; }

    /// Exact inverse -Omega M^T Omega; no matrix inversion is performed.
    SymplecticMatrix inverse() const;

    /// Composition (validates the product).
    friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

  private:
    struct Unchecked {};
    SymplecticMatrix(Mat m, Unchecked);

    Mat m_;
    int n_modes_;
};

/// Two-mode beam splitter with transmittance t in [0, 1]. Q and P blocks are
/// both [[sqrt(t), sqrt(1-t)], [-sqrt(1-t), sqrt(t)]].
SymplecticMatrix beam_splitter(double transmittance);

/// Two-mode squeezer written against the same-mode path: Q block
/// [[sqrt(g), sqrt(g-1)], [sqrt(g-1), sqrt(g)]], P block with the off-diagonal
/// signs flipped. Requires g >= 1 (g = cosh^2 of the squeeze parameter).
SymplecticMatrix two_mode_squeezer(double gain);

/// Single-mode rotation (q, p) -> (cos(t) q + sin(t) p, -sin(t) q + cos(t) p).
SymplecticMatrix phase_rotation(double theta);

/// Places a k-mode transformation onto the listed modes of an n_modes system.
SymplecticMatrix embed(const SymplecticMatrix& s, int n_modes, const std::vector<int>& modes);

/// Mode relabeling: output slot i carries what source[i] carried.
SymplecticMatrix mode_permutation(const std::vector<int>& source);

/// Haar-ish random symplectic exp(Omega H), H symmetric with entries uniform
/// in [-1, 1], rescaled so the condition number stays below ~1e6.
SymplecticMatrix random_symplectic(int n_modes, Rng& rng);

/// Splits the modes of a scattering matrix into signal and ancilla roles and
/// selects working quadratures.
///
/// Modes 0..m-1 are the signal (input a, output b), modes m..m+n-1 carry the
/// squeezed ancillas on the input side and the measured idlers on the output
/// side. Per ancilla j, squeeze_phases[j] picks the squeezed quadrature
/// z = cos(phi) q + sin(phi) p (phase 0: squeezed in Q); the anti-squeezed
/// partner z' is its conjugate. Per idler j, measure_phases[j] picks the
/// homodyned quadrature h = -sin(theta) q + cos(theta) p (phase 0: P is
/// measured); the unmeasured partner h' is its conjugate. Empty phase vectors
/// mean all zeros.
struct ModePartition {
    int m = 1;
    int n = 1;
    std::vector<double> squeeze_phases;
    std::vector<double> measure_phases;

    /// Throws std::invalid_argument if sizes are inconsistent with n_modes.
    void validate(int n_modes) const;
    std::vector<double> squeeze_or_zero() const;
    std::vector<double> measure_or_zero() const;
};

/// The sixteen blocks of a partitioned scattering relation
///   (y_b, y_b', y_h, y_h') = S (x_a, x_a', x_z, x_z'),
/// sliced from the rotated matrix R_out S R_in^-1. Rows: b/b' are the signal
/// output Q/P groups, h/h' the measured/unmeasured idler groups. Columns:
/// a/a' are the signal input Q/P groups, z/z' the squeezed/anti-squeezed
/// ancilla groups.
struct BlockView {
    int m = 0;
    int n = 0;
    Mat b_a, b_ap, b_z, b_zp;
    Mat bp_a, bp_ap, bp_z, bp_zp;
    Mat h_a, h_ap, h_z, h_zp;
    Mat hp_a, hp_ap, hp_z, hp_zp;

    /// Puts the sixteen blocks back into the rotated matrix (grouped
    /// ordering). Pure placement, so this round-trips bit-exactly.
    Mat reassemble() const;
};

BlockView partition_blocks(const SymplecticMatrix& s, const ModePartition& p);

/// Ancilla-side quadrature selection as a symplectic rotation (identity on
/// signal modes). partition_blocks rotates by this on the input side.
SymplecticMatrix input_rotation(const ModePartition& p, int n_modes);
/// Idler-side selection; partition_blocks rotates by this on the output side.
SymplecticMatrix output_rotation(const ModePartition& p, int n_modes);

/// || M Omega_m M^T - Omega_m ||_F for the 2m x 2m signal input->output
/// subblock M. Zero exactly when the converter is matched, i.e. the signal
/// path is symplectic on its own.
double matching_defect(const SymplecticMatrix& s, const ModePartition& p);

}  // namespace aqtsim

#endif
