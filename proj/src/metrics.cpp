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

#include "aqtsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aqtsim {

namespace {

constexpr double kGridLogMin = -2.0;
constexpr double kGridLogMax = 4.0;
constexpr int kGridPoints = 200;
constexpr int kGoldenIterations = 60;

void require_single_mode(const EffectiveChannel& ch, const char* who) {
    if (ch.m != 1 || ch.x.rows() != 2 || ch.v.rows() != 2 || ch.d.size() != 2) {
        throw std::invalid_argument(std::string(who) + ": implemented for single-mode channels");
    }
}

GaussianState thermal_purification(double input_photons) {
    // Two-mode squeezed vacuum whose mode-0 marginal is thermal with the
    // requested occupation; built directly from cosh/sinh(2 xi) to avoid the
    // acosh round trip at large photon numbers.
    const double ch = 2.0 * input_photons + 1.0;
    const double sh = 2.0 * std::sqrt(input_photons * (input_photons + 1.0));
    Mat cov = Mat::Zero(4, 4);
    cov(0, 0) = cov(1, 1) = cov(2, 2) = cov(3, 3) = ch;
    cov(0, 1) = cov(1, 0) = sh;
    cov(2, 3) = cov(3, 2) = -sh;
    return GaussianState(Vec::Zero(4), std::move(cov));
}

}  // namespace

bool fidelity_mean_independent(const EffectiveChannel& ch) {
    return ch.m == 1 && (ch.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12;
}

double average_coherent_fidelity(const EffectiveChannel& ch, double prior_photons) {
    require_single_mode(ch, "average_coherent_fidelity");
    if (!(prior_photons >= 0.0)) {
        throw std::domain_error("average_coherent_fidelity: prior_photons must be >= 0");
    }
    // Input (mean w, cov I) against output (mean X w + d, cov X X^T + V),
    // averaged over w ~ N(0, 2 lambda I) in closed form. For X = I the
    // lambda dependence drops out.
    const Mat identity = Mat::Identity(2, 2);
    const Mat sigma2 = ch.x * ch.x.transpose() + ch.v;
    const Mat a_inv = identity + sigma2;
    const double prefactor = 2.0 / std::sqrt(a_inv.determinant());
    const Mat b = ch.x - identity;
    const Mat a = a_inv.inverse();
    const double w = 2.0 * prior_photons;
    const double det_factor = (identity + w * b.transpose() * a * b).determinant();
    const Mat shifted = a_inv + w * b * b.transpose();
    const double quad = ch.d.dot(shifted.inverse() * ch.d);
    const double f = prefactor / std::sqrt(det_factor) * std::exp(-0.5 * quad);
    return std::min(1.0, std::max(0.0, f));
}

double dqt_fidelity(const ConverterSpec& c, double prior_photons) {
    return average_coherent_fidelity(dqt_channel(c), prior_photons);
}

double coherent_information(const EffectiveChannel& ch, double input_photons) {
    require_single_mode(ch, "coherent_information");
    if (!(input_photons >= 0.0)) {
        throw std::domain_error("coherent_information: input_photons must be >= 0");
    }
    if (!channel_is_physical(ch)) {
        throw std::domain_error("coherent_information: channel is not completely positive");
    }
    const GaussianState joint = apply_channel(ch, thermal_purification(input_photons), {0});
    return entropy_bits(joint.reduced({0})) - entropy_bits(joint);
}

CapacityEstimate capacity_lower_bound(const EffectiveChannel& ch) {
    require_single_mode(ch, "capacity_lower_bound");

    // For an additive-noise channel, rotating into the frame where the noise
    // is round is a symplectic pre/post-processing, so maximizing over
    // thermal inputs there equals maximizing over matched squeezed-thermal
    // inputs here. Both directions give valid capacity lower bounds; the
    // matched one depends on V only through det V.
    EffectiveChannel search = ch;
    const double det_v = ch.v.determinant();
    if (fidelity_mean_independent(ch) && det_v > 0.0) {
        search.x = Mat::Identity(2, 2);
        search.v = std::sqrt(det_v) * Mat::Identity(2, 2);
        search.d = Vec::Zero(2);
    }

    auto evaluate = [&search](double log_photons) {
        return coherent_information(search, std::pow(10.0, log_photons));
    };

    int best_index = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    double best_log = kGridLogMin;
    std::vector<double> grid_logs(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        grid_logs[i] = kGridLogMin + (kGridLogMax - kGridLogMin) * i / (kGridPoints - 1);
        const double value = evaluate(grid_logs[i]);
        if (value > best_value) {
            best_value = value;
            best_index = i;
            best_log = grid_logs[i];
        }
    }

    CapacityEstimate estimate;
    estimate.diverged = best_index == kGridPoints - 1;
    if (!estimate.diverged) {
        double lo = grid_logs[std::max(0, best_index - 1)];
        double hi = grid_logs[std::min(kGridPoints - 1, best_index + 1)];
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = evaluate(x1);
        double f2 = evaluate(x2);
        for (int it = 0; it < kGoldenIterations; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = evaluate(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = evaluate(x1);
            }
        }
        if (f1 > best_value) {
            best_value = f1;
            best_log = x1;
        }
        if (f2 > best_value) {
            best_value = f2;
            best_log = x2;
        }
    }

    estimate.lower_bound = std::max(0.0, best_value);
    estimate.argmax_input_photons = std::pow(10.0, best_log);
    estimate.grid_meta = "log-spaced input photon grid 1e-02..1e+04 (200 points), "
                         "golden-section refinement around the argmax";
    return estimate;
}

double capacity_threshold(const ConverterSpec& c) {
    if (const auto* bs = std::get_if<BeamSplitterSpec>(&c)) {
        const double t = bs->transmittance;
        if (!(t > 0.0 && t < 1.0)) {
            throw std::domain_error("capacity_threshold: beam-splitter bound needs T in (0, 1)");
        }
        return 4.0 / (9.0 * (t + 1.0 / t - 2.0));
    }
    if (const auto* tms = std::get_if<TwoModeSqueezerSpec>(&c)) {
        const double t = tms->transmittance;
        if (!(t > 1.0)) {
            throw std::domain_error("capacity_threshold: two-mode-squeezer bound needs T' > 1");
        }
        return 4.0 / (9.0 * (t + 1.0 / t + 2.0));
    }
    throw std::invalid_argument("capacity_threshold: no closed form for this converter kind");
}

}  // namespace aqtsim
