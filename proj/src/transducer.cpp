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

#include "aqtsim/transducer.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aqtsim {

namespace {

constexpr double kMaxBlockCondition = 1e8;

double condition_number(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return smax / smin;
}

SymplecticMatrix cavity_scattering(const PhysicalCavitySpec& spec) {
    if (!(spec.kappa1 > 0.0) || !(spec.kappa2 > 0.0)) {
        throw std::domain_error("resolve_scattering: cavity couplings kappa must be positive");
    }
    if (!std::isfinite(spec.g) || !std::isfinite(spec.g_prime) ||
        !std::isfinite(spec.delta_omega)) {
        throw std::domain_error("resolve_scattering: cavity parameters must be finite");
    }
    // In the probe rotating frame the parametric coupling oscillates at twice
    // the detuning, so a static single-frequency scattering matrix exists
    // only when one of the two vanishes.
    if (spec.g_prime != 0.0 && spec.delta_omega != 0.0) {
        throw ModelError(
            "resolve_scattering: a detuned parametric cavity mixes sidebands and has no real "
            "single-frequency quadrature scattering (set delta_omega = 0 or g_prime = 0)",
            std::abs(spec.g_prime * spec.delta_omega));
    }
    using Cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    const Cplx im(0.0, 1.0);

    // Doubled basis (a1, a2, a1+, a2+). The creation rows carry the
    // conjugated detuning and coupling signs.
    Eigen::Matrix2d ma;
    ma << 0.0, spec.g, spec.g, 0.0;
    Eigen::Matrix2d mb;
    mb << 0.0, spec.g_prime, spec.g_prime, 0.0;
    Mat m_full = Mat::Zero(4, 4);
    m_full.topLeftCorner(2, 2) = ma - spec.delta_omega * Eigen::Matrix2d::Identity();
    m_full.topRightCorner(2, 2) = mb;
    m_full.bottomLeftCorner(2, 2) = -mb;
    m_full.bottomRightCorner(2, 2) = -ma + spec.delta_omega * Eigen::Matrix2d::Identity();

    Vec kappa(4);
    kappa << spec.kappa1, spec.kappa2, spec.kappa1, spec.kappa2;
    const Vec sqrt_kappa = kappa.cwiseSqrt();

    CMat resolvent = im * m_full.cast<Cplx>();
    resolvent += (kappa / 2.0).asDiagonal().toDenseMatrix().cast<Cplx>();
    CMat s_doubled = CMat::Identity(4, 4) -
                     sqrt_kappa.asDiagonal().toDenseMatrix().cast<Cplx>() *
                         resolvent.inverse() *
                         sqrt_kappa.asDiagonal().toDenseMatrix().cast<Cplx>();

    // Map (a, a+) to quadratures: q = a + a+, p = -i a + i a+.
    CMat w = CMat::Zero(4, 4);
    w.topLeftCorner(2, 2) = Eigen::Matrix2d::Identity();
    w.topRightCorner(2, 2) = Eigen::Matrix2d::Identity();
    w.bottomLeftCorner(2, 2) = -im * Eigen::Matrix2d::Identity();
    w.bottomRightCorner(2, 2) = im * Eigen::Matrix2d::Identity();
    CMat w_inv = CMat::Zero(4, 4);
    w_inv.topLeftCorner(2, 2) = 0.5 * Eigen::Matrix2d::Identity();
    w_inv.topRightCorner(2, 2) = 0.5 * im * Eigen::Matrix2d::Identity();
    w_inv.bottomLeftCorner(2, 2) = 0.5 * Eigen::Matrix2d::Identity();
    w_inv.bottomRightCorner(2, 2) = -0.5 * im * Eigen::Matrix2d::Identity();

    CMat s_quad = w * s_doubled * w_inv;
    const double imag_defect = s_quad.imag().cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, s_quad.real().cwiseAbs().maxCoeff());
    if (imag_defect > 1e-9 * scale) {
        throw ModelError(
            "resolve_scattering: a detuned parametric cavity mixes sidebands and has no real "
            "single-frequency quadrature scattering (set delta_omega = 0 or g_prime = 0)",
            imag_defect);
    }
    Mat s_real = s_quad.real();
    const double sympl_defect = symplectic_defect(s_real);
    if (sympl_defect > kSymplecticTol) {
        throw ModelError("resolve_scattering: cavity scattering is not symplectic", sympl_defect);
    }
    // Conversion happens on the cross path; swap the output ports so the
    // converted field sits in the signal slot.
    return mode_permutation({1, 0}) * SymplecticMatrix(std::move(s_real));
}

}  // namespace

ResolvedConverter resolve_scattering(const ConverterSpec& c) {
    if (const auto* bs = std::get_if<BeamSplitterSpec>(&c)) {
        if (!(bs->transmittance >= 0.0 && bs->transmittance <= 1.0)) {
            throw std::domain_error("resolve_scattering: beam-splitter T must lie in [0, 1]");
        }
        return ResolvedConverter{beam_splitter(bs->transmittance), ModePartition{1, 1, {}, {}}};
    }
    if (const auto* tms = std::get_if<TwoModeSqueezerSpec>(&c)) {
        if (!(tms->transmittance >= 1.0)) {
            throw std::domain_error("resolve_scattering: two-mode-squeezer T' must be >= 1");
        }
        // Conversion gain T' sits on the cross path of a squeezer with
        // cosh^2 = T' + 1; swap outputs so the converted field is the signal.
        SymplecticMatrix s =
            mode_permutation({1, 0}) * two_mode_squeezer(tms->transmittance + 1.0);
        return ResolvedConverter{std::move(s), ModePartition{1, 1, {}, {}}};
    }
    if (const auto* cav = std::get_if<PhysicalCavitySpec>(&c)) {
        return ResolvedConverter{cavity_scattering(*cav),
                                 ModePartition{1, 1, {0.0}, {M_PI / 2.0}}};
    }
    const auto& custom = std::get<CustomSpec>(c);
    custom.partition.validate(custom.s.n_modes());
    return ResolvedConverter{custom.s, custom.partition};
}

ImperfectionParams ImperfectionParams::uniform(int n, double xi, double n_z, double eta) {
    ImperfectionParams imp;
    imp.xi.assign(n, xi);
    imp.n_z.assign(n, n_z);
    imp.eta.assign(n, eta);
    return imp;
}

ImperfectionParams ImperfectionParams::ideal(int n) {
    return uniform(n, std::numeric_limits<double>::infinity(), 0.0, 1.0);
}

void ImperfectionParams::validate(int n) const {
    if (static_cast<int>(xi.size()) != n || static_cast<int>(n_z.size()) != n ||
        static_cast<int>(eta.size()) != n) {
        throw std::invalid_argument("ImperfectionParams: need one (xi, n_z, eta) per ancilla");
    }
    for (int j = 0; j < n; ++j) {
        if (std::isnan(xi[j]) || xi[j] < 0.0) {
            throw std::domain_error("ImperfectionParams: xi must be >= 0");
        }
        if (!std::isfinite(n_z[j]) || n_z[j] < 0.0) {
            throw std::domain_error("ImperfectionParams: n_z must be finite and >= 0");
        }
        if (!(eta[j] > 0.0 && eta[j] <= 1.0)) {
            throw std::domain_error("ImperfectionParams: eta must lie in (0, 1]");
        }
    }
}

std::vector<double> ImperfectionParams::nu() const {
    std::vector<double> out(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) {
        out[j] = std::exp(-2.0 * xi[j]) * (2.0 * n_z[j] + 1.0);
    }
    return out;
}

std::vector<double> ImperfectionParams::nu_prime() const {
    std::vector<double> out(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) {
        out[j] = std::exp(2.0 * xi[j]) * (2.0 * n_z[j] + 1.0);
    }
    return out;
}

std::vector<double> ImperfectionParams::mu() const {
    std::vector<double> out(eta.size());
    for (std::size_t j = 0; j < eta.size(); ++j) {
        out[j] = (1.0 - eta[j]) / eta[j];
    }
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) {
    if (!(value > 0.0)) {
        throw std::domain_error("linear_to_db: value must be positive");
    }
    return 10.0 * std::log10(value);
}

ImperfectionParams imperfections_for(int n, double nu, double mu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("imperfections_for: nu must be positive and finite");
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("imperfections_for: mu must be nonnegative and finite");
    }
    double xi = 0.0;
    double n_z = 0.0;
    if (nu <= 1.0) {
        xi = -0.5 * std::log(nu);
    } else {
        n_z = 0.5 * (nu - 1.0);
    }
    return ImperfectionParams::uniform(n, xi, n_z, 1.0 / (1.0 + mu));
}

AQTPlan plan_feedforward(const SymplecticMatrix& s, const ModePartition& p,
                         const std::vector<double>& eta) {
    p.validate(s.n_modes());
    if (static_cast<int>(eta.size()) != p.n) {
        throw std::invalid_argument("plan_feedforward: need one efficiency per idler");
    }
    for (double e : eta) {
        if (!(e > 0.0 && e <= 1.0)) {
            throw std::domain_error("plan_feedforward: eta must lie in (0, 1]");
        }
    }
    const BlockView blocks = partition_blocks(s, p);
    const double cond = condition_number(blocks.h_zp);
    if (!(cond < kMaxBlockCondition)) {
        std::ostringstream msg;
        msg << "plan_feedforward: block S_{h,z'} is singular or ill-conditioned (condition "
               "number "
            << cond << "); choose different squeezed/measured quadratures";
        throw PlanningError(msg.str());
    }
    Mat rhs(2 * p.m, p.n);
    rhs.topRows(p.m) = blocks.b_zp;
    rhs.bottomRows(p.m) = blocks.bp_zp;
    Mat f_star = -(rhs * blocks.h_zp.inverse());

    Vec inv_sqrt_eta(p.n);
    for (int j = 0; j < p.n; ++j) {
        inv_sqrt_eta(j) = 1.0 / std::sqrt(eta[j]);
    }
    AQTPlan plan;
    plan.partition = p;
    plan.f_star = f_star;
    plan.f = f_star * inv_sqrt_eta.asDiagonal();
    return plan;
}

AQTPlan plan_feedforward(const SymplecticMatrix& s, const ModePartition& p, double eta) {
    return plan_feedforward(s, p, std::vector<double>(p.n, eta));
}

SymplecticMatrix effective_scattering(const SymplecticMatrix& s, const AQTPlan& plan) {
    const ModePartition& p = plan.partition;
    p.validate(s.n_modes());
    const BlockView blocks = partition_blocks(s, p);
    Mat direct(2 * p.m, 2 * p.m);
    direct.topLeftCorner(p.m, p.m) = blocks.b_a;
    direct.topRightCorner(p.m, p.m) = blocks.b_ap;
    direct.bottomLeftCorner(p.m, p.m) = blocks.bp_a;
    direct.bottomRightCorner(p.m, p.m) = blocks.bp_ap;
    Mat measured(p.n, 2 * p.m);
    measured.leftCols(p.m) = blocks.h_a;
    measured.rightCols(p.m) = blocks.h_ap;
    Mat s_tilde = direct + plan.f_star * measured;
    const double defect = symplectic_defect(s_tilde);
    if (defect > kSymplecticTol) {
        throw ModelError("effective_scattering: result failed the symplecticity check", defect);
    }
    return SymplecticMatrix(std::move(s_tilde));
}

Mat noise_covariance(const SymplecticMatrix& s, const ModePartition& p, const AQTPlan& plan,
                     const ImperfectionParams& imp) {
    p.validate(s.n_modes());
    imp.validate(p.n);
    const int m = p.m;
    const int n = p.n;
    const int total = m + n;

    // The inverse scattering maps outputs back to inputs, so its row groups
    // are (a, z, a', z') and its column groups (b, h', b', h).
    Mat s_inv = s.inverse().matrix();
    const auto squeeze = p.squeeze_or_zero();
    const auto measure = p.measure_or_zero();
    bool rotated = false;
    for (int j = 0; j < n; ++j) {
        rotated = rotated || squeeze[j] != 0.0 || measure[j] != 0.0;
    }
    if (rotated) {
        s_inv = input_rotation(p, total).matrix() * s_inv *
                output_rotation(p, total).matrix().transpose();
    }
    const Mat inv_a_hp = s_inv.block(0, m, m, n);
    const Mat inv_ap_hp = s_inv.block(m + n, m, m, n);
    const Mat inv_z_hp = s_inv.block(m, m, n, n);

    const double cond = condition_number(inv_z_hp);
    if (!(cond < kMaxBlockCondition)) {
        std::ostringstream msg;
        msg << "noise_covariance: block (S^{-1})_{z,h'} is singular or ill-conditioned "
               "(condition number "
            << cond << ")";
        throw PlanningError(msg.str());
    }
    Mat top_bottom(2 * m, n);
    top_bottom.topRows(m) = inv_a_hp;
    top_bottom.bottomRows(m) = inv_ap_hp;
    const Mat b_star = top_bottom * inv_z_hp.inverse();

    const Mat s_tilde_inv = effective_scattering(s, plan).inverse().matrix();
    const Mat gains = s_tilde_inv * plan.f_star;

    const std::vector<double> nu = imp.nu();
    const std::vector<double> mu = imp.mu();
    Vec nu_diag(n);
    Vec mu_diag(n);
    for (int j = 0; j < n; ++j) {
        nu_diag(j) = nu[j];
        mu_diag(j) = mu[j];
    }
    Mat v = b_star * nu_diag.asDiagonal() * b_star.transpose() +
            gains * mu_diag.asDiagonal() * gains.transpose();
    return ((v + v.transpose()) / 2.0).eval();
}

double channel_cp_defect(const EffectiveChannel& ch) {
    const Mat omega = symplectic_form(ch.m);
    Eigen::MatrixXcd h = ch.v.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) *
         (omega - ch.x * omega * ch.x.transpose()).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    return min_eig < 0.0 ? -min_eig : 0.0;
}

bool channel_is_physical(const EffectiveChannel& ch, double tol) {
    const double scale = std::max(1.0, std::max(ch.v.cwiseAbs().maxCoeff(),
                                                ch.x.cwiseAbs().maxCoeff()));
    return channel_cp_defect(ch) <= tol * scale;
}

EffectiveChannel dqt_channel(const ConverterSpec& c) {
    const ResolvedConverter rc = resolve_scattering(c);
    const int m = rc.partition.m;
    const int n = rc.partition.n;
    const int total = m + n;
    const Mat& sm = rc.s.matrix();

    EffectiveChannel ch;
    ch.m = m;
    ch.x.resize(2 * m, 2 * m);
    ch.x.topLeftCorner(m, m) = sm.block(0, 0, m, m);
    ch.x.topRightCorner(m, m) = sm.block(0, total, m, m);
    ch.x.bottomLeftCorner(m, m) = sm.block(total, 0, m, m);
    ch.x.bottomRightCorner(m, m) = sm.block(total, total, m, m);

    // Vacuum ancillas have unit covariance, so the forced noise is the raw
    // ancilla->signal coupling squared.
    Mat coupling(2 * m, 2 * n);
    coupling.topLeftCorner(m, n) = sm.block(0, m, m, n);
    coupling.topRightCorner(m, n) = sm.block(0, total + m, m, n);
    coupling.bottomLeftCorner(m, n) = sm.block(total, m, m, n);
    coupling.bottomRightCorner(m, n) = sm.block(total, total + m, m, n);
    ch.v = coupling * coupling.transpose();
    ch.d = Vec::Zero(2 * m);
    return ch;
}

EffectiveChannel aqt_channel(const ConverterSpec& c, const ImperfectionParams& imp) {
    const ResolvedConverter rc = resolve_scattering(c);
    imp.validate(rc.partition.n);
    const AQTPlan plan = plan_feedforward(rc.s, rc.partition, imp.eta);
    EffectiveChannel ch;
    ch.m = rc.partition.m;
    ch.x = Mat::Identity(2 * ch.m, 2 * ch.m);
    ch.v = noise_covariance(rc.s, rc.partition, plan, imp);
    ch.d = Vec::Zero(2 * ch.m);
    return ch;
}

GaussianState apply_channel(const EffectiveChannel& ch, const GaussianState& s,
                            const std::vector<int>& modes) {
    const int n = s.n_modes();
    if (static_cast<int>(modes.size()) != ch.m) {
        throw std::invalid_argument("apply_channel: mode list must match the channel size");
    }
    std::vector<bool> used(n, false);
    for (int mode : modes) {
        if (mode < 0 || mode >= n || used[mode]) {
            throw std::invalid_argument("apply_channel: mode indices must be distinct, in range");
        }
        used[mode] = true;
    }
    auto q = [&](int local) { return modes[local]; };
    auto p = [&](int local) { return n + modes[local]; };
    Mat x_full = Mat::Identity(2 * n, 2 * n);
    Mat v_full = Mat::Zero(2 * n, 2 * n);
    Vec d_full = Vec::Zero(2 * n);
    for (int a = 0; a < ch.m; ++a) {
        d_full(q(a)) = ch.d(a);
        d_full(p(a)) = ch.d(ch.m + a);
        for (int b = 0; b < ch.m; ++b) {
            x_full(q(a), q(b)) = ch.x(a, b);
            x_full(q(a), p(b)) = ch.x(a, ch.m + b);
            x_full(p(a), q(b)) = ch.x(ch.m + a, b);
            x_full(p(a), p(b)) = ch.x(ch.m + a, ch.m + b);
            v_full(q(a), q(b)) = ch.v(a, b);
            v_full(q(a), p(b)) = ch.v(a, ch.m + b);
            v_full(p(a), q(b)) = ch.v(ch.m + a, b);
            v_full(p(a), p(b)) = ch.v(ch.m + a, ch.m + b);
        }
    }
    return GaussianState(x_full * s.mean() + d_full,
                         x_full * s.cov() * x_full.transpose() + v_full);
}

}  // namespace aqtsim
