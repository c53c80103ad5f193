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

#include "aqtsim/symplectic.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace aqtsim {

namespace {

void check_even_square(const Mat& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (m.rows() % 2 != 0 || m.rows() == 0) {
        throw std::invalid_argument(std::string(who) +
                                    ": dimension must be even and positive (grouped q/p layout)");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
    }
}

}  // namespace

Mat symplectic_form(int n_modes) {
    if (n_modes <= 0) {
        throw std::invalid_argument("symplectic_form: n_modes must be positive");
    }
    Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
    omega.topRightCorner(n_modes, n_modes) = Mat::Identity(n_modes, n_modes);
    omega.bottomLeftCorner(n_modes, n_modes) = -Mat::Identity(n_modes, n_modes);
    return omega;
}

double symplectic_defect(const Mat& m) {
    check_even_square(m, "symplectic_defect");
    const Mat omega = symplectic_form(static_cast<int>(m.rows()) / 2);
    return (m * omega * m.transpose() - omega).norm();
}

bool is_symplectic(const Mat& m, double tol) {
    return symplectic_defect(m) <= tol;
}

SymplecticMatrix::SymplecticMatrix(Mat m) : m_(std::move(m)) {
    check_even_square(m_, "SymplecticMatrix");
    n_modes_ = static_cast<int>(m_.rows()) / 2;
    double defect = symplectic_defect(m_);
    if (defect > kSymplecticTol) {
        throw std::invalid_argument("SymplecticMatrix: matrix does not preserve Omega (defect " +
                                    std::to_string(defect) + ")");
    }
}

SymplecticMatrix::SymplecticMatrix(Mat m, Unchecked) : m_(std::move(m)) {
    n_modes_ = static_cast<int>(m_.rows()) / 2;
}

SymplecticMatrix SymplecticMatrix::identity(int n_modes) {
    if (n_modes <= 0) {
        throw std::invalid_argument("SymplecticMatrix::identity: n_modes must be positive");
    }
    return SymplecticMatrix(Mat::Identity(2 * n_modes, 2 * n_modes), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    const Mat omega = symplectic_form(n_modes_);
    // M^-1 = -Omega M^T Omega holds exactly for symplectic M; the products
    // with Omega only permute and negate entries.
    return SymplecticMatrix(-omega * m_.transpose() * omega, Unchecked{});
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    if (a.n_modes() != b.n_modes()) {
        throw std::invalid_argument("SymplecticMatrix: mode count mismatch in composition");
    }
    return SymplecticMatrix(a.m_ * b.m_);
}

SymplecticMatrix beam_splitter(double transmittance) {
    if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
        throw std::domain_error("beam_splitter: transmittance must lie in [0, 1]");
    }
    const double c = std::sqrt(transmittance);
    const double s = std::sqrt(1.0 - transmittance);
    Mat r(2, 2);
    r << c, s, -s, c;
    Mat m = Mat::Zero(4, 4);
    m.topLeftCorner(2, 2) = r;
    m.bottomRightCorner(2, 2) = r;
    return SymplecticMatrix(std::move(m));
}

SymplecticMatrix two_mode_squeezer(double gain) {
    if (!(gain >= 1.0)) {
        throw std::domain_error("two_mode_squeezer: gain must be >= 1");
    }
    const double c = std::sqrt(gain);
    const double s = std::sqrt(gain - 1.0);
    Mat m = Mat::Zero(4, 4);
    m.topLeftCorner(2, 2) << c, s, s, c;
    m.bottomRightCorner(2, 2) << c, -s, -s, c;
    return SymplecticMatrix(std::move(m));
}

SymplecticMatrix phase_rotation(double theta) {
    Mat m(2, 2);
    m << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return SymplecticMatrix(std::move(m));
}

SymplecticMatrix embed(const SymplecticMatrix& s, int n_modes, const std::vector<int>& modes) {
    const int k = s.n_modes();
    if (static_cast<int>(modes.size()) != k) {
        throw std::invalid_argument("embed: mode list size must match the embedded matrix");
    }
    std::vector<bool> used(n_modes, false);
    for (int mode : modes) {
        if (mode < 0 || mode >= n_modes || used[mode]) {
            throw std::invalid_argument("embed: mode indices must be distinct and in range");
        }
        used[mode] = true;
    }
    Mat out = Mat::Identity(2 * n_modes, 2 * n_modes);
    auto q = [&](int local) { return modes[local]; };
    auto p = [&](int local) { return n_modes + modes[local]; };
    const Mat& sm = s.matrix();
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            out(q(a), q(b)) = sm(a, b);
            out(q(a), p(b)) = sm(a, k + b);
            out(p(a), q(b)) = sm(k + a, b);
            out(p(a), p(b)) = sm(k + a, k + b);
        }
    }
    return SymplecticMatrix(std::move(out));
}

SymplecticMatrix mode_permutation(const std::vector<int>& source) {
    const int n = static_cast<int>(source.size());
    std::vector<bool> seen(n, false);
    for (int s : source) {
        if (s < 0 || s >= n || seen[s]) {
            throw std::invalid_argument("mode_permutation: not a permutation");
        }
        seen[s] = true;
    }
    Mat m = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, source[i]) = 1.0;
        m(n + i, n + source[i]) = 1.0;
    }
    return SymplecticMatrix(std::move(m));
}

SymplecticMatrix random_symplectic(int n_modes, Rng& rng) {
    if (n_modes <= 0) {
        throw std::invalid_argument("random_symplectic: n_modes must be positive");
    }
    const int d = 2 * n_modes;
    Mat h(d, d);
    for (int i = 0; i < d; ++i) {
        h(i, i) = rng.uniform(-1.0, 1.0);
        for (int j = i + 1; j < d; ++j) {
            double v = rng.uniform(-1.0, 1.0);
            h(i, j) = v;
            h(j, i) = v;
        }
    }
    Mat a = symplectic_form(n_modes) * h;
    // exp(A) has condition number at most exp(2 ||A||_2); cap the norm so the
    // draw stays comfortably under 1e6.
    const double norm = a.norm();
    if (norm > 6.0) {
        a *= 6.0 / norm;
    }
    return SymplecticMatrix(a.exp());
}

void ModePartition::validate(int n_modes) const {
    if (m < 1 || n < 1) {
        throw std::invalid_argument("ModePartition: need at least one signal and one ancilla mode");
    }
    if (m + n != n_modes) {
        throw std::invalid_argument("ModePartition: m + n must equal the mode count");
    }
    if (!squeeze_phases.empty() && static_cast<int>(squeeze_phases.size()) != n) {
        throw std::invalid_argument("ModePartition: squeeze_phases must have one entry per ancilla");
    }
    if (!measure_phases.empty() && static_cast<int>(measure_phases.size()) != n) {
        throw std::invalid_argument("ModePartition: measure_phases must have one entry per idler");
    }
}

std::vector<double> ModePartition::squeeze_or_zero() const {
    return squeeze_phases.empty() ? std::vector<double>(n, 0.0) : squeeze_phases;
}

std::vector<double> ModePartition::measure_or_zero() const {
    return measure_phases.empty() ? std::vector<double>(n, 0.0) : measure_phases;
}

namespace {

bool all_zero(const std::vector<double>& v) {
    for (double x : v) {
        if (x != 0.0) {
            return false;
        }
    }
    return true;
}

SymplecticMatrix ancilla_rotation(const std::vector<double>& phases, int m, int n_modes) {
    Mat r = Mat::Identity(2 * n_modes, 2 * n_modes);
    for (int j = 0; j < static_cast<int>(phases.size()); ++j) {
        const int q = m + j;
        const int p = n_modes + m + j;
        const double c = std::cos(phases[j]);
        const double s = std::sin(phases[j]);
        r(q, q) = c;
        r(q, p) = s;
        r(p, q) = -s;
        r(p, p) = c;
    }
    return SymplecticMatrix(std::move(r));
}

}  // namespace

SymplecticMatrix input_rotation(const ModePartition& p, int n_modes) {
    p.validate(n_modes);
    return ancilla_rotation(p.squeeze_or_zero(), p.m, n_modes);
}

SymplecticMatrix output_rotation(const ModePartition& p, int n_modes) {
    p.validate(n_modes);
    return ancilla_rotation(p.measure_or_zero(), p.m, n_modes);
}

BlockView partition_blocks(const SymplecticMatrix& s, const ModePartition& p) {
    p.validate(s.n_modes());
    const int m = p.m;
    const int n = p.n;
    const auto squeeze = p.squeeze_or_zero();
    const auto measure = p.measure_or_zero();

    Mat rotated;
    if (all_zero(squeeze) && all_zero(measure)) {
        rotated = s.matrix();  // skip the identity products so bits are untouched
    } else {
        const Mat rin = ancilla_rotation(squeeze, m, m + n).matrix();
        const Mat rout = ancilla_rotation(measure, m, m + n).matrix();
        // The per-mode rotation blocks are orthogonal, so transpose is the
        // exact inverse.
        rotated = rout * s.matrix() * rin.transpose();
    }

    // Grouped layout of the rotated matrix:
    //   rows/cols [0,m)      signal Q   (b / a)
    //   rows/cols [m,m+n)    ancilla Q  (h' / z)
    //   rows/cols [m+n,2m+n) signal P   (b' / a')
    //   rows/cols [2m+n,...) ancilla P  (h / z')
    const int sq = 0, aq = m, sp = m + n, ap = 2 * m + n;
    BlockView v;
    v.m = m;
    v.n = n;
    v.b_a = rotated.block(sq, sq, m, m);
    v.b_ap = rotated.block(sq, sp, m, m);
    v.b_z = rotated.block(sq, aq, m, n);
    v.b_zp = rotated.block(sq, ap, m, n);
    v.bp_a = rotated.block(sp, sq, m, m);
    v.bp_ap = rotated.block(sp, sp, m, m);
    v.bp_z = rotated.block(sp, aq, m, n);
    v.bp_zp = rotated.block(sp, ap, m, n);
    v.h_a = rotated.block(ap, sq, n, m);
    v.h_ap = rotated.block(ap, sp, n, m);
    v.h_z = rotated.block(ap, aq, n, n);
    v.h_zp = rotated.block(ap, ap, n, n);
    v.hp_a = rotated.block(aq, sq, n, m);
    v.hp_ap = rotated.block(aq, sp, n, m);
    v.hp_z = rotated.block(aq, aq, n, n);
    v.hp_zp = rotated.block(aq, ap, n, n);
    return v;
}

Mat BlockView::reassemble() const {
    const int sq = 0, aq = m, sp = m + n, ap = 2 * m + n;
    Mat out(2 * (m + n), 2 * (m + n));
    out.block(sq, sq, m, m) = b_a;
    out.block(sq, sp, m, m) = b_ap;
    out.block(sq, aq, m, n) = b_z;
    out.block(sq, ap, m, n) = b_zp;
    out.block(sp, sq, m, m) = bp_a;
    out.block(sp, sp, m, m) = bp_ap;
    out.block(sp, aq, m, n) = bp_z;
    out.block(sp, ap, m, n) = bp_zp;
    out.block(ap, sq, n, m) = h_a;
    out.block(ap, sp, n, m) = h_ap;
    out.block(ap, aq, n, n) = h_z;
    out.block(ap, ap, n, n) = h_zp;
    out.block(aq, sq, n, m) = hp_a;
    out.block(aq, sp, n, m) = hp_ap;
    out.block(aq, aq, n, n) = hp_z;
    out.block(aq, ap, n, n) = hp_zp;
    return out;
}

double matching_defect(const SymplecticMatrix& s, const ModePartition& p) {
    p.validate(s.n_modes());
    const int m = p.m;
    const int sp = m + p.n;
    // The quadrature selections act on ancilla/idler modes only, so the
    // signal subblock can be sliced straight from the source matrix.
    Mat sub(2 * m, 2 * m);
    sub.topLeftCorner(m, m) = s.matrix().block(0, 0, m, m);
    sub.topRightCorner(m, m) = s.matrix().block(0, sp, m, m);
    sub.bottomLeftCorner(m, m) = s.matrix().block(sp, 0, m, m);
    sub.bottomRightCorner(m, m) = s.matrix().block(sp, sp, m, m);
    return symplectic_defect(sub);
}

}  // namespace aqtsim
