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

// Release gate for the library: nine numbered criteria covering planner
// robustness, closed-form noise, Monte-Carlo agreement, fidelity and
// capacity anchors, and binary determinism. Each criterion prints one
// [PASS]/[FAIL] line; the exit status is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aqtsim/fock.hpp"
#include "aqtsim/metrics.hpp"
#include "aqtsim/rng.hpp"
#include "aqtsim/scenarios.hpp"
#include "aqtsim/trajectory.hpp"
#include "aqtsim/transducer.hpp"

using namespace aqtsim;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++g_failures;
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct RandomNet {
    CustomSpec spec;
    AQTPlan plan;
};

// Shared pool for criteria 1 and 2: random networks with 1..2 signal and
// 1..3 ancilla modes, random quadrature phases, planner-accepted.
std::vector<RandomNet> draw_networks(int count, std::uint64_t seed,
                                     int* rejections) {
    Rng rng(seed);
    std::vector<RandomNet> nets;
    nets.reserve(static_cast<std::size_t>(count));
    int guard = 0;
    while (static_cast<int>(nets.size()) < count && guard < count * 10 + 100) {
        ++guard;
        const int m = 1 + static_cast<int>(rng.next_u64() % 2);
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        SymplecticMatrix s = random_symplectic(m + n, rng);
        ModePartition p;
        p.m = m;
        p.n = n;
        for (int j = 0; j < n; ++j) {
            p.squeeze_phases.push_back(rng.uniform(0.0, 6.283185307179586));
            p.measure_phases.push_back(rng.uniform(0.0, 6.283185307179586));
        }
        try {
            AQTPlan plan = plan_feedforward(s, p);
            nets.push_back(RandomNet{CustomSpec{s, p}, plan});
        } catch (const PlanningError&) {
            ++*rejections;
        }
    }
    return nets;
}

// criteria 1-2 ------------------------------------------------------------

void criterion_residual_symplectic_and_ideal_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    int rejections = 0;
    std::vector<RandomNet> nets = draw_networks(1000, 20260825u, &rejections);

    double max_defect = 0.0;
    int model_failures = 0;
    for (const RandomNet& net : nets) {
        try {
            SymplecticMatrix se = effective_scattering(net.spec.s, net.plan);
            max_defect = std::max(max_defect, symplectic_defect(se.matrix()));
        } catch (const ModelError& e) {
            ++model_failures;
            max_defect = std::max(max_defect, e.defect());
        }
    }
    const double elapsed = seconds_since(t0);
    report(1,
           nets.size() == 1000 && model_failures == 0 && max_defect < 1e-9 &&
               elapsed < 10.0,
           "1000 random networks, residual map symplectic: max defect " +
               fmt(max_defect) + ", " + std::to_string(rejections) +
               " planning rejections, " + fmt(elapsed) + " s");

    double max_x_err = 0.0;
    double max_v_err = 0.0;
    for (const RandomNet& net : nets) {
        EffectiveChannel ch = aqt_channel(
            net.spec, ImperfectionParams::ideal(net.spec.partition.n));
        const int d = 2 * net.spec.partition.m;
        max_x_err = std::max(
            max_x_err,
            (ch.x - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
        max_v_err = std::max(max_v_err, ch.v.cwiseAbs().maxCoeff());
    }
    report(2, max_x_err < 1e-9 && max_v_err < 1e-9,
           "ideal-squeezing channel is the identity on the same networks: "
           "max |X-I| " +
               fmt(max_x_err) + ", max |V| " + fmt(max_v_err));
}

// criterion 3 --------------------------------------------------------------

void criterion_closed_form_noise() {
    std::vector<double> log_axis;
    for (int i = 0; i < 10; ++i) {
        log_axis.push_back(std::pow(10.0, -3.0 + 3.0 * i / 9.0));
    }
    double max_diff = 0.0;
    for (int it = 0; it < 10; ++it) {
        const double t_bs = 0.05 + 0.9 * it / 9.0;
        const double t_tms = 1.25 * std::pow(8.0, it / 9.0);
        for (double nu : log_axis) {
            for (double mu : log_axis) {
                ImperfectionParams imp = imperfections_for(1, nu, mu);
                Mat v_bs = aqt_channel(BeamSplitterSpec{t_bs}, imp).v;
                Mat want_bs = Mat::Zero(2, 2);
                want_bs(0, 0) = (1.0 - t_bs) * nu / t_bs;
                want_bs(1, 1) = (1.0 - t_bs) * mu;
                max_diff = std::max(max_diff,
                                    (v_bs - want_bs).cwiseAbs().maxCoeff());

                Mat v_tms = aqt_channel(TwoModeSqueezerSpec{t_tms}, imp).v;
                Mat want_tms = Mat::Zero(2, 2);
                want_tms(0, 0) = (1.0 + t_tms) * nu / t_tms;
                want_tms(1, 1) = (1.0 + t_tms) * mu;
                max_diff = std::max(max_diff,
                                    (v_tms - want_tms).cwiseAbs().maxCoeff());
            }
        }
    }
    report(3, max_diff < 1e-12,
           "added noise equals (1 -/+ T) diag(nu/T, mu) on 10x10x10 grids: "
           "max |diff| " +
               fmt(max_diff));
}

// criterion 4 --------------------------------------------------------------

void criterion_trajectory_oracle() {
    const std::vector<Scenario> scenarios = {
        minimal_bs_scenario(), minimal_tms_scenario(), teleport_scenario()};
    bool ok = true;
    std::string detail;
    std::uint64_t seed = 101;
    for (const Scenario& sc : scenarios) {
        const auto t0 = std::chrono::steady_clock::now();
        VerifyReport rep = run_verify(sc, 1000000, seed++);
        const double elapsed = seconds_since(t0);
        ok = ok && rep.pass && elapsed < 60.0;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += sc.name + " max|z| " + fmt(rep.max_abs_z) + " (" +
                  fmt(elapsed) + " s)";
    }
    report(4, ok, "sampled covariance within 4 sigma at 1e6 trajectories: " + detail);
}

// criterion 5 --------------------------------------------------------------

void criterion_fidelity_values() {
    EffectiveChannel ref =
        aqt_channel(BeamSplitterSpec{0.8}, imperfections_for(1, 1.0, 1.0));
    const double f_closed = average_coherent_fidelity(ref);
    const bool anchor_ok = std::abs(f_closed - 0.8989) <= 1e-4;

    GaussianState in = GaussianState::vacuum(1);
    const double f_fock = fock_overlap(in, apply_channel(ref, in, {0}), 60);
    const bool fock_ok = std::abs(f_closed - f_fock) < 1e-6;

    EffectiveChannel strong =
        aqt_channel(BeamSplitterSpec{0.1}, imperfections_for(1, 0.1, 0.1));
    const double f_strong = average_coherent_fidelity(strong);
    const bool crossing_ok = f_strong > 0.5;

    report(5, anchor_ok && fock_ok && crossing_ok,
           "fidelity " + fmt(f_closed) + " (target 0.8989), |closed-Fock| " +
               fmt(std::abs(f_closed - f_fock)) + ", weak-converter fidelity " +
               fmt(f_strong) + " > 1/2");
}

// criterion 6 --------------------------------------------------------------

void criterion_capacity_thresholds() {
    const auto t0 = std::chrono::steady_clock::now();
    const double th_bs = capacity_threshold(BeamSplitterSpec{0.1});
    const double th_tms = capacity_threshold(TwoModeSqueezerSpec{10.0});
    bool ok = std::abs(th_bs - 0.05487) <= 1e-5 &&
              std::abs(th_tms - 0.03673) <= 1e-5;

    // 20 converter strengths x 20 mu/nu ratios, product pinned at 80% of the
    // closed-form threshold: the bound must stay positive everywhere.
    int nonpositive = 0;
    for (int it = 0; it < 20; ++it) {
        const double t_bs = 0.05 + 0.9 * it / 19.0;
        const double t_tms = 1.25 * std::pow(16.0, it / 19.0);
        for (int ir = 0; ir < 20; ++ir) {
            const double ratio = std::pow(10.0, -2.0 + 4.0 * ir / 19.0);
            for (int kind = 0; kind < 2; ++kind) {
                const ConverterSpec spec =
                    kind == 0 ? ConverterSpec{BeamSplitterSpec{t_bs}}
                              : ConverterSpec{TwoModeSqueezerSpec{t_tms}};
                const double product = 0.8 * capacity_threshold(spec);
                const double nu = std::sqrt(product / ratio);
                const double mu = std::sqrt(product * ratio);
                EffectiveChannel ch =
                    aqt_channel(spec, imperfections_for(1, nu, mu));
                if (!(capacity_lower_bound(ch).lower_bound > 0.0)) {
                    ++nonpositive;
                }
            }
        }
    }
    ok = ok && nonpositive == 0;

    // Anti-degradable direct channels report exactly zero.
    int nonzero = 0;
    if (capacity_lower_bound(dqt_channel(BeamSplitterSpec{0.1})).lower_bound !=
        0.0) {
        ++nonzero;
    }
    for (int it = 0; it < 20; ++it) {
        const double t_tms = 1.25 * std::pow(16.0, it / 19.0);
        if (capacity_lower_bound(dqt_channel(TwoModeSqueezerSpec{t_tms}))
                .lower_bound != 0.0) {
            ++nonzero;
        }
    }
    ok = ok && nonzero == 0;
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 120.0;

    report(6, ok,
           "thresholds " + fmt(th_bs) + " / " + fmt(th_tms) +
               ", sub-threshold grid nonpositive " + std::to_string(nonpositive) +
               ", direct-channel nonzero " + std::to_string(nonzero) + ", " +
               fmt(elapsed) + " s");
}

// criterion 7 --------------------------------------------------------------

void criterion_loss_capacity() {
    const double cap =
        capacity_lower_bound(dqt_channel(BeamSplitterSpec{0.8})).lower_bound;
    report(7, std::abs(cap - 2.0) <= 0.02,
           "direct loss channel capacity " + fmt(cap) + " (target 2.00 +/- 0.02)");
}

// criterion 8 --------------------------------------------------------------

void criterion_mu_nu_product_only() {
    const double product = 0.01;
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i < 17; ++i) {
        const double ratio = std::pow(10.0, -2.0 + 4.0 * i / 16.0);
        const double nu = std::sqrt(product / ratio);
        const double mu = std::sqrt(product * ratio);
        EffectiveChannel ch =
            aqt_channel(BeamSplitterSpec{0.8}, imperfections_for(1, nu, mu));
        const double c = capacity_lower_bound(ch).lower_bound;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    report(8, hi - lo < 1e-3 && lo > 0.0,
           "capacity spread " + fmt(hi - lo) +
               " bits over 4 decades of mu/nu at mu*nu = 0.01");
}

// criterion 9 --------------------------------------------------------------

std::string run_and_capture(const std::string& args, const std::string& tag,
                            int* exit_code) {
    const std::string path =
        std::string(AQT_SIM_TEST_TMPDIR) + "/acc_" + tag + ".txt";
    const std::string cmd = "\"" + std::string(AQT_SIM_BINARY) + "\" " + args +
                            " > \"" + path + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    *exit_code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_binary_determinism() {
    const std::string sweep_args =
        "sweep --bs 0.8 --nu-db -20:0:21 --mu-db -10,0 --seed 5";
    int rc1 = 0, rc2 = 0, rc3 = 0;
    const std::string s1 = run_and_capture(sweep_args + " --threads 1", "sweep1", &rc1);
    const std::string s2 = run_and_capture(sweep_args + " --threads 1", "sweep2", &rc2);
    const std::string s3 = run_and_capture(sweep_args + " --threads 8", "sweep8", &rc3);
    const bool sweep_ok =
        rc1 == 0 && rc2 == 0 && rc3 == 0 && s1 == s2 && s1 == s3 && !s1.empty();

    const std::string verify_args =
        "verify --scenario minimal-bs --n-traj 200000 --seed 7";
    int rv1 = 0, rv2 = 0, rv3 = 0;
    const std::string v1 = run_and_capture(verify_args + " --threads 1", "verify1", &rv1);
    const std::string v2 = run_and_capture(verify_args + " --threads 1", "verify2", &rv2);
    const std::string v3 = run_and_capture(verify_args + " --threads 8", "verify8", &rv3);
    const bool verify_ok =
        rv1 == 0 && rv2 == 0 && rv3 == 0 && v1 == v2 && v1 == v3 && !v1.empty();

    report(9, sweep_ok && verify_ok,
           std::string("byte-identical outputs across reruns and worker counts: ") +
               "sweep " + (sweep_ok ? "ok" : "MISMATCH") + ", verify " +
               (verify_ok ? "ok" : "MISMATCH"));
}

}  // namespace

int main() {
    criterion_residual_symplectic_and_ideal_identity();
    criterion_closed_form_noise();
    criterion_trajectory_oracle();
    criterion_fidelity_values();
    criterion_capacity_thresholds();
    criterion_loss_capacity();
    criterion_mu_nu_product_only();
    criterion_binary_determinism();
    if (g_failures == 0) {
        std::printf("all 9 criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", g_failures);
    }
    return g_failures;
}
