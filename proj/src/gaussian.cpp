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

#include "aqtsim/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqtsim {

namespace {

// Physicality and symmetry tolerances scale with the covariance magnitude:
// eigenvalue round-off grows with the matrix norm, and a pure squeezed state
// with variance e^{2 xi} would otherwise fail an absolute check.
double scale_of(const Mat& cov) { return std::max(1.0, cov.cwiseAbs().maxCoeff()); }

}  // namespace

double physicality_defect(const Mat& cov) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
        throw std::invalid_argument("physicality_defect: covariance must be square, even size");
    }
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    return min_eig < 0.0 ? -min_eig : 0.0;
}

GaussianState::GaussianState(Vec mean, Mat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0 || cov_.rows() == 0) {
        throw std::invalid_argument("GaussianState: covariance must be square with even size");
    }
    if (mean_.size() != cov_.rows()) {
        throw std::invalid_argument("GaussianState: mean length must match covariance size");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw std::invalid_argument("GaussianState: non-finite entries");
    }
    n_modes_ = static_cast<int>(cov_.rows()) / 2;
    const double scale = scale_of(cov_);
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();
    if (physicality_defect(cov_) > 1e-9 * scale) {
        throw std::invalid_argument("GaussianState: covariance violates cov + i Omega >= 0");
    }
}

GaussianState::GaussianState(Vec mean, Mat cov, Unchecked)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    n_modes_ = static_cast<int>(cov_.rows()) / 2;
}

GaussianState GaussianState::vacuum(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("vacuum: n_modes must be positive");
    }
    return GaussianState(Vec::Zero(2 * n_modes), Mat::Identity(2 * n_modes, 2 * n_modes),
                         Unchecked{});
}

GaussianState GaussianState::coherent(const std::vector<std::complex<double>>& alphas) {
    const int n = static_cast<int>(alphas.size());
    if (n < 1) {
        throw std::invalid_argument("coherent: need at least one mode");
    }
    Vec mean(2 * n);
    for (int k = 0; k < n; ++k) {
        mean(k) = 2.0 * alphas[k].real();
        mean(n + k) = 2.0 * alphas[k].imag();
    }
    return GaussianState(std::move(mean), Mat::Identity(2 * n, 2 * n), Unchecked{});
}

GaussianState GaussianState::coherent(std::complex<double> alpha) {
    return coherent(std::vector<std::complex<double>>{alpha});
}

GaussianState GaussianState::squeezed(const AncillaSpec& spec, double phase) {
    if (spec.xi < 0.0 || spec.n_z < 0.0) {
        throw std::domain_error("squeezed: xi and n_z must be nonnegative");
    }
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = spec.nu();
    d(1, 1) = spec.nu_prime();
    const Mat r = phase_rotation(phase).matrix();
    return GaussianState(Vec::Zero(2), r.transpose() * d * r, Unchecked{});
}

GaussianState GaussianState::thermal(double mean_photons) {
    if (mean_photons < 0.0) {
        throw std::domain_error("thermal: mean photon number must be nonnegative");
    }
    return GaussianState(Vec::Zero(2), (2.0 * mean_photons + 1.0) * Mat::Identity(2, 2),
                         Unchecked{});
}

GaussianState GaussianState::epr(double xi) {
    const double ch = std::cosh(2.0 * xi);
    const double sh = std::sinh(2.0 * xi);
    Mat cov = Mat::Zero(4, 4);
    cov(0, 0) = cov(1, 1) = cov(2, 2) = cov(3, 3) = ch;
    cov(0, 1) = cov(1, 0) = sh;
    cov(2, 3) = cov(3, 2) = -sh;
    return GaussianState(Vec::Zero(4), std::move(cov), Unchecked{});
}

GaussianState GaussianState::reduced(const std::vector<int>& keep_modes) const {
    const int k = static_cast<int>(keep_modes.size());
    if (k < 1) {
        throw std::invalid_argument("reduced: must keep at least one mode");
    }
    for (int m : keep_modes) {
        if (m < 0 || m >= n_modes_) {
            throw std::invalid_argument("reduced: mode index out of range");
        }
    }
    std::vector<int> quads(2 * k);
    for (int i = 0; i < k; ++i) {
        quads[i] = keep_modes[i];
        quads[k + i] = n_modes_ + keep_modes[i];
    }
    Vec mean(2 * k);
    Mat cov(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        mean(i) = mean_(quads[i]);
        for (int j = 0; j < 2 * k; ++j) {
            cov(i, j) = cov_(quads[i], quads[j]);
        }
    }
    return GaussianState(std::move(mean), std::move(cov), Unchecked{});
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    const int na = a.n_modes();
    const int nb = b.n_modes();
    const int n = na + nb;
    Vec mean = Vec::Zero(2 * n);
    Mat cov = Mat::Zero(2 * n, 2 * n);
    // Grouped ordering interleaves nothing within a group: a's Q block lands
    // at [0, na), b's at [na, n), and similarly for P at offset n.
    mean.segment(0, na) = a.mean().segment(0, na);
    mean.segment(na, nb) = b.mean().segment(0, nb);
    mean.segment(n, na) = a.mean().segment(na, na);
    mean.segment(n + na, nb) = b.mean().segment(nb, nb);
    cov.block(0, 0, na, na) = a.cov().block(0, 0, na, na);
    cov.block(0, n, na, na) = a.cov().block(0, na, na, na);
    cov.block(n, 0, na, na) = a.cov().block(na, 0, na, na);
    cov.block(n, n, na, na) = a.cov().block(na, na, na, na);
    cov.block(na, na, nb, nb) = b.cov().block(0, 0, nb, nb);
    cov.block(na, n + na, nb, nb) = b.cov().block(0, nb, nb, nb);
    cov.block(n + na, na, nb, nb) = b.cov().block(nb, 0, nb, nb);
    cov.block(n + na, n + na, nb, nb) = b.cov().block(nb, nb, nb, nb);
    return GaussianState(std::move(mean), std::move(cov), GaussianState::Unchecked{});
}

GaussianState apply_symplectic(const GaussianState& s, const SymplecticMatrix& m) {
    if (m.n_modes() != s.n_modes()) {
        throw std::invalid_argument("apply_symplectic: mode count mismatch");
    }
    const Mat& sm = m.matrix();
    return GaussianState(sm * s.mean(), sm * s.cov() * sm.transpose(),
                         GaussianState::Unchecked{});
}

GaussianState displace(const GaussianState& s, const Vec& d) {
    if (d.size() != s.mean().size()) {
        throw std::invalid_argument("displace: displacement length mismatch");
    }
    if (!d.allFinite()) {
        throw std::invalid_argument("displace: non-finite displacement");
    }
    return GaussianState(s.mean() + d, s.cov(), GaussianState::Unchecked{});
}

HomodyneResult condition_on_homodyne(const GaussianState& s, int quad_index, double outcome,
                                     double efficiency) {
    const int n = s.n_modes();
    if (quad_index < 0 || quad_index >= 2 * n) {
        throw std::invalid_argument("condition_on_homodyne: quadrature index out of range");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw std::domain_error("condition_on_homodyne: efficiency must lie in (0, 1]");
    }
    const int mode = quad_index % n;
    const int conj_index = quad_index < n ? n + mode : mode;

    // Detected value: y = sqrt(eta) x_B + sqrt(1-eta) x_vac. Only the row,
    // column and variance of the measured quadrature change.
    const double eta = efficiency;
    const double var_b = eta * s.cov()(quad_index, quad_index) + (1.0 - eta);
    if (!(var_b > 0.0)) {
        throw std::runtime_error("condition_on_homodyne: nonpositive detected variance");
    }
    const double mean_b = std::sqrt(eta) * s.mean()(quad_index);

    std::vector<int> kept;
    kept.reserve(2 * n - 2);
    for (int i = 0; i < 2 * n; ++i) {
        if (i != quad_index && i != conj_index) {
            kept.push_back(i);
        }
    }
    const int k = static_cast<int>(kept.size());
    Vec mean_a(k);
    Vec cross(k);
    Mat cov_a(k, k);
    for (int i = 0; i < k; ++i) {
        mean_a(i) = s.mean()(kept[i]);
        cross(i) = std::sqrt(eta) * s.cov()(kept[i], quad_index);
        for (int j = 0; j < k; ++j) {
            cov_a(i, j) = s.cov()(kept[i], kept[j]);
        }
    }
    Vec cond_mean = mean_a + cross * ((outcome - mean_b) / var_b);
    Mat cond_cov = cov_a - (cross * cross.transpose()) / var_b;

    // Measuring the only mode leaves a zero-mode state; its outcome stats are
    // still meaningful.
    GaussianState remaining = k == 0 ? GaussianState(Vec(0), Mat(0, 0),
                                                     GaussianState::Unchecked{})
                                     : GaussianState(std::move(cond_mean), std::move(cond_cov));
    HomodyneResult result{std::move(remaining), mean_b, var_b};
    return result;
}

std::vector<double> symplectic_eigenvalues(const Mat& cov) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
        throw std::invalid_argument("symplectic_eigenvalues: covariance must be even square");
    }
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    Vec clamped = es.eigenvalues().cwiseMax(0.0);
    Mat sqrt_cov =
        es.eigenvectors() * clamped.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    // i (V^{1/2} Omega V^{1/2}) is Hermitian with spectrum {+-nu_k}.
    Mat a = sqrt_cov * symplectic_form(n) * sqrt_cov;
    Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h, Eigen::EigenvaluesOnly);
    std::vector<double> nus(n);
    for (int k = 0; k < n; ++k) {
        nus[k] = hs.eigenvalues()(n + k);
    }
    return nus;
}

double entropy_bits(const GaussianState& s) {
    const double tol = 1e-9 * scale_of(s.cov());
    double total = 0.0;
    for (double nu : symplectic_eigenvalues(s.cov())) {
        if (nu < 1.0 - tol) {
            throw std::domain_error("entropy_bits: symplectic eigenvalue below 1 (unphysical)");
        }
        const double x = std::max(0.0, (nu - 1.0) / 2.0);
        if (x > 0.0) {
            total += (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
        }
    }
    return total;
}

double fidelity(const GaussianState& a, const GaussianState& b) {
    if (a.n_modes() != 1 || b.n_modes() != 1) {
        throw std::invalid_argument("fidelity: implemented for single-mode states");
    }
    const Mat sum = a.cov() + b.cov();
    const double big_delta = sum.determinant();
    const double small_delta =
        std::max(0.0, (a.cov().determinant() - 1.0) * (b.cov().determinant() - 1.0));
    const double denom = std::sqrt(big_delta + small_delta) - std::sqrt(small_delta);
    const Vec d = a.mean() - b.mean();
    const double quad = d.dot(sum.inverse() * d);
    const double f = 2.0 / denom * std::exp(-0.5 * quad);
    return std::min(1.0, std::max(0.0, f));
}

}  // namespace aqtsim
