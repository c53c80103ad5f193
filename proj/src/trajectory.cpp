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

#include "aqtsim/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "aqtsim/rng.hpp"

namespace aqtsim {

namespace {

// Chunked accumulation: each chunk is summed by exactly one worker and the
// chunks are reduced in index order afterwards, so the floating-point result
// does not depend on how chunks were assigned to workers.
constexpr std::int64_t kChunkSize = 16384;

struct ChunkStats {
    Mat sxx, sxw, sww;  // raw second-moment sums (sxw accumulates x * w^T)
    Mat sum_x, sum_w;   // per-probe-group first-moment sums, one column per group
    Mat sum_y;          // per-probe-group detected-idler sums (n x groups)
    Vec sum_y2;         // raw detected-idler square sums
    Vec cnt;            // per-probe-group trajectory counts

    ChunkStats(int dim_sig, int n_idler, int groups)
        : sxx(Mat::Zero(dim_sig, dim_sig)),
          sxw(Mat::Zero(dim_sig, dim_sig)),
          sww(Mat::Zero(dim_sig, dim_sig)),
          sum_x(Mat::Zero(dim_sig, groups)),
          sum_w(Mat::Zero(dim_sig, groups)),
          sum_y(Mat::Zero(n_idler, groups)),
          sum_y2(Vec::Zero(n_idler)),
          cnt(Vec::Zero(groups)) {}

    void add(const ChunkStats& o) {
        sxx += o.sxx;
        sxw += o.sxw;
        sww += o.sww;
        sum_x += o.sum_x;
        sum_w += o.sum_w;
        sum_y += o.sum_y;
        sum_y2 += o.sum_y2;
        cnt += o.cnt;
    }
};

}  // namespace

EmpiricalChannel run_trajectories(const TrajectoryConfig& cfg) {
    ResolvedConverter rc = resolve_scattering(cfg.converter);
    const int m = rc.partition.m;
    const int n = rc.partition.n;
    const int dim_sig = 2 * m;
    const int total = m + n;
    const int groups = 4 * m;

    // The estimator needs every probe group populated twice over: one sign
    // pair per input quadrature for the map estimate, plus residual degrees
    // of freedom for the covariance.
    if (cfg.n_traj < 10 || cfg.n_traj < 2 * groups) {
        throw std::invalid_argument(
            "run_trajectories: n_traj too small for a covariance estimate");
    }
    if (!(cfg.probe_amplitude > 0.0) || !std::isfinite(cfg.probe_amplitude)) {
        throw std::invalid_argument(
            "run_trajectories: probe_amplitude must be positive and finite");
    }
    cfg.imp.validate(n);

    AQTPlan plan = plan_feedforward(rc.s, rc.partition, cfg.imp.eta);

    // Work in the rotated frame where the squeezed quadratures sit in the
    // ancilla q slots and the measured quadratures in the ancilla p slots.
    // Inputs:  [0,m) signal q, [m,m+n) squeezed z, [m+n,2m+n) signal p,
    //          [2m+n,2(m+n)) anti-squeezed z'.
    // Outputs: [0,m) signal q, [m,m+n) undetected idler, [m+n,2m+n) signal p,
    //          [2m+n,2(m+n)) detected idler.
    BlockView blocks = partition_blocks(rc.s, rc.partition);
    const Mat s_rot = blocks.reassemble();
    const Mat s_tilde_inv =
        effective_scattering(rc.s, plan).inverse().matrix();

    const std::vector<double> nu = cfg.imp.nu();
    const std::vector<double> nu_prime = cfg.imp.nu_prime();
    Vec sqrt_nu(n), sqrt_nu_prime(n), sqrt_eta(n), sqrt_loss(n);
    for (int j = 0; j < n; ++j) {
        sqrt_nu(j) = std::sqrt(nu[static_cast<std::size_t>(j)]);
        sqrt_nu_prime(j) = std::sqrt(nu_prime[static_cast<std::size_t>(j)]);
        sqrt_eta(j) = std::sqrt(cfg.imp.eta[static_cast<std::size_t>(j)]);
        sqrt_loss(j) = std::sqrt(1.0 - cfg.imp.eta[static_cast<std::size_t>(j)]);
    }

    const double amp = cfg.probe_amplitude;
    const std::int64_t n_traj = cfg.n_traj;
    const std::int64_t n_chunks = (n_traj + kChunkSize - 1) / kChunkSize;

    std::vector<ChunkStats> partials;
    partials.reserve(static_cast<std::size_t>(n_chunks));
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        partials.emplace_back(dim_sig, n, groups);
    }

    std::atomic<std::int64_t> next_chunk{0};
    auto worker = [&]() {
        Vec x_in(2 * total), y(2 * total), x_sig(dim_sig), w(dim_sig), y_meas(n);
        for (;;) {
            const std::int64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) {
                return;
            }
            ChunkStats& st = partials[static_cast<std::size_t>(c)];
            const std::int64_t lo = c * kChunkSize;
            const std::int64_t hi = std::min(n_traj, lo + kChunkSize);
            for (std::int64_t k = lo; k < hi; ++k) {
                Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
                const int g = static_cast<int>(k % groups);
                const int probe_quad = g / 2;
                const double probe = (g % 2 == 0) ? amp : -amp;

                // Fixed draw order per trajectory: signal quadratures,
                // squeezed ancillas, anti-squeezed ancillas, detector noise.
                for (int i = 0; i < dim_sig; ++i) {
                    x_sig(i) = rng.normal();
                }
                x_sig(probe_quad) += probe;
                x_in.segment(0, m) = x_sig.segment(0, m);
                x_in.segment(total, m) = x_sig.segment(m, m);
                for (int j = 0; j < n; ++j) {
                    x_in(m + j) = sqrt_nu(j) * rng.normal();
                }
                for (int j = 0; j < n; ++j) {
                    x_in(total + m + j) = sqrt_nu_prime(j) * rng.normal();
                }

                y.noalias() = s_rot * x_in;
                for (int j = 0; j < n; ++j) {
                    y_meas(j) = sqrt_eta(j) * y(total + m + j) +
                                sqrt_loss(j) * rng.normal();
                }

                w.segment(0, m) = y.segment(0, m);
                w.segment(m, m) = y.segment(total, m);
                w.noalias() += plan.f * y_meas;
                w = s_tilde_inv * w;

                st.cnt(g) += 1.0;
                st.sum_x.col(g) += x_sig;
                st.sum_w.col(g) += w;
                st.sum_y.col(g) += y_meas;
                st.sum_y2 += y_meas.cwiseProduct(y_meas);
                st.sxx.noalias() += x_sig * x_sig.transpose();
                st.sxw.noalias() += x_sig * w.transpose();
                st.sww.noalias() += w * w.transpose();
            }
        }
    };

    int n_threads = cfg.n_threads > 0
                        ? cfg.n_threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(
                                              std::min<std::int64_t>(n_chunks, 64))));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    ChunkStats tot(dim_sig, n, groups);
    for (const ChunkStats& st : partials) {
        tot.add(st);
    }

    Mat xbar(dim_sig, groups), wbar(dim_sig, groups);
    for (int g = 0; g < groups; ++g) {
        xbar.col(g) = tot.sum_x.col(g) / tot.cnt(g);
        wbar.col(g) = tot.sum_w.col(g) / tot.cnt(g);
    }

    EmpiricalChannel out;
    out.n_traj = n_traj;
    out.x_hat = Mat(dim_sig, dim_sig);
    for (int q = 0; q < dim_sig; ++q) {
        out.x_hat.col(q) = (wbar.col(2 * q) - wbar.col(2 * q + 1)) / (2.0 * amp);
    }

    // Pooled within-group centering removes the probe displacements before
    // forming second moments.
    Mat sxx_c = tot.sxx;
    Mat sxw_c = tot.sxw;
    Mat sww_c = tot.sww;
    for (int g = 0; g < groups; ++g) {
        sxx_c.noalias() -= tot.cnt(g) * xbar.col(g) * xbar.col(g).transpose();
        sxw_c.noalias() -= tot.cnt(g) * xbar.col(g) * wbar.col(g).transpose();
        sww_c.noalias() -= tot.cnt(g) * wbar.col(g) * wbar.col(g).transpose();
    }

    const double dof = static_cast<double>(n_traj - groups);
    Mat resid = sww_c - sxw_c.transpose() * out.x_hat.transpose() -
                out.x_hat * sxw_c +
                out.x_hat * sxx_c * out.x_hat.transpose();
    out.v_hat = (resid + resid.transpose()) / (2.0 * dof);

    out.v_stderr = Mat(dim_sig, dim_sig);
    for (int i = 0; i < dim_sig; ++i) {
        for (int j = 0; j < dim_sig; ++j) {
            out.v_stderr(i, j) = std::sqrt(
                (out.v_hat(i, i) * out.v_hat(j, j) +
                 out.v_hat(i, j) * out.v_hat(i, j)) /
                dof);
        }
    }

    out.x_stderr = Mat(dim_sig, dim_sig);
    for (int i = 0; i < dim_sig; ++i) {
        const double var_w = sww_c(i, i) / dof;
        for (int q = 0; q < dim_sig; ++q) {
            const double inv_counts =
                1.0 / tot.cnt(2 * q) + 1.0 / tot.cnt(2 * q + 1);
            out.x_stderr(i, q) = std::sqrt(var_w * inv_counts) / (2.0 * amp);
        }
    }

    out.outcome_mean = Vec(n);
    out.outcome_var = Vec(n);
    for (int j = 0; j < n; ++j) {
        out.outcome_mean(j) = tot.sum_y.row(j).sum() / static_cast<double>(n_traj);
        double between = 0.0;
        for (int g = 0; g < groups; ++g) {
            between += tot.sum_y(j, g) * tot.sum_y(j, g) / tot.cnt(g);
        }
        out.outcome_var(j) = (tot.sum_y2(j) - between) / dof;
    }
    return out;
}

}  // namespace aqtsim
