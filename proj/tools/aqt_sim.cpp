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

// aqt-sim: evaluate bosonic transduction networks.
//
// Subcommands:
//   matrix    resolve a converter, plan feedforward, print the blocks as JSON
//   sweep     evaluate fidelity and capacity over an imperfection grid (CSV)
//   capacity  single-point capacity lower bound as JSON
//   verify    Monte-Carlo cross-check of the analytic channel
//
// Exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 planning or
// model error, 4 I/O error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqtsim/metrics.hpp"
#include "aqtsim/scenarios.hpp"
#include "aqtsim/symplectic.hpp"
#include "aqtsim/trajectory.hpp"
#include "aqtsim/transducer.hpp"

namespace {

using aqtsim::AQTPlan;
using aqtsim::CapacityEstimate;
using aqtsim::ConverterSpec;
using aqtsim::CustomSpec;
using aqtsim::EffectiveChannel;
using aqtsim::ImperfectionParams;
using aqtsim::Mat;
using aqtsim::ModelError;
using aqtsim::ModePartition;
using aqtsim::PlanningError;
using aqtsim::ResolvedConverter;
using aqtsim::SymplecticMatrix;
using aqtsim::TruncationError;
using ojson = nlohmann::ordered_json;

/// File-system failures (distinct exit code from argument errors).
struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ojson mat_json(const Mat& m) {
    ojson rows = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Converter flags (shared by all subcommands).

struct ConverterCli {
    double bs = 0.5;
    double tms = 1.0;
    std::string cavity;
    std::string custom_path;
    std::vector<double> squeeze_phases;
    std::vector<double> measure_phases;
    CLI::Option* bs_opt = nullptr;
    CLI::Option* tms_opt = nullptr;
    CLI::Option* cavity_opt = nullptr;
    CLI::Option* custom_opt = nullptr;
};

void add_converter_flags(CLI::App* sub, ConverterCli& c) {
    CLI::Option_group* grp =
        sub->add_option_group("converter", "exactly one converter is required");
    c.bs_opt = grp->add_option("--bs", c.bs, "beam-splitter transmittance T in [0,1]");
    c.tms_opt = grp->add_option("--tms", c.tms, "two-mode-squeezer gain T' >= 1");
    c.cavity_opt = grp->add_option("--cavity", c.cavity,
                                   "cavity rates g,gp,k1,k2,dw (comma separated)");
    c.custom_opt = grp->add_option(
        "--custom", c.custom_path,
        "path to a scattering file: first line 'm n', then 2(m+n) rows of "
        "2(m+n) space-separated entries");
    grp->require_option(1);
    sub->add_option("--squeeze-phases", c.squeeze_phases,
                    "ancilla squeeze phases, comma separated (--custom only)")
        ->delimiter(',');
    sub->add_option("--measure-phases", c.measure_phases,
                    "idler measurement phases, comma separated (--custom only)")
        ->delimiter(',');
}

std::vector<double> parse_double_list(const std::string& text, char sep,
                                      const std::string& what) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(token, &pos));
            if (pos != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": cannot parse '" + token + "'");
        }
    }
    return out;
}

ConverterSpec read_custom_file(const std::string& path,
                               const std::vector<double>& squeeze_phases,
                               const std::vector<double>& measure_phases) {
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot open custom converter file: " + path);
    }
    int m = 0;
    int n = 0;
    if (!(in >> m >> n)) {
        throw std::invalid_argument("custom file: first line must be 'm n'");
    }
    if (m < 1 || n < 1) {
        throw std::invalid_argument(
            "custom file: need at least one signal and one ancilla mode");
    }
    const int dim = 2 * (m + n);
    Mat mat(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            if (!(in >> mat(r, c))) {
                throw std::invalid_argument(
                    "custom file: expected " + std::to_string(dim) + " x " +
                    std::to_string(dim) + " matrix entries after 'm n'");
            }
        }
    }
    ModePartition part;
    part.m = m;
    part.n = n;
    part.squeeze_phases = squeeze_phases;
    part.measure_phases = measure_phases;
    part.validate(m + n);
    return CustomSpec{SymplecticMatrix(mat), part};
}

ConverterSpec build_converter(const ConverterCli& c) {
    const bool phases_given =
        !c.squeeze_phases.empty() || !c.measure_phases.empty();
    if (*c.bs_opt) {
        if (phases_given) {
            throw std::invalid_argument(
                "--squeeze-phases/--measure-phases apply only to --custom");
        }
        return aqtsim::BeamSplitterSpec{c.bs};
    }
    if (*c.tms_opt) {
        if (phases_given) {
            throw std::invalid_argument(
                "--squeeze-phases/--measure-phases apply only to --custom");
        }
        return aqtsim::TwoModeSqueezerSpec{c.tms};
    }
    if (*c.cavity_opt) {
        if (phases_given) {
            throw std::invalid_argument(
                "--squeeze-phases/--measure-phases apply only to --custom");
        }
        std::vector<double> v = parse_double_list(c.cavity, ',', "--cavity");
        if (v.size() != 5) {
            throw std::invalid_argument("--cavity needs exactly g,gp,k1,k2,dw");
        }
        return aqtsim::PhysicalCavitySpec{v[0], v[1], v[2], v[3], v[4]};
    }
    return read_custom_file(c.custom_path, c.squeeze_phases, c.measure_phases);
}

double mu_from_eta(double eta) {
    if (!(eta > 0.0) || eta > 1.0) {
        throw std::invalid_argument("--eta must lie in (0, 1]");
    }
    return (1.0 - eta) / eta;
}

std::string strip(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

/// Merges an optional key=value file named by --config into the argument
/// list. A key contributes "--key value" only when the flag is absent from
/// the command line, so explicit flags always win.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot open config file: " + path);
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = strip(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        const std::size_t eq = text.find('=');
        const std::string where =
            "config file " + path + " line " + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw std::invalid_argument(where + ": expected key=value");
        }
        const std::string key = strip(text.substr(0, eq));
        const std::string value = strip(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument(where + ": expected key=value");
        }
        if (key == "config") {
            throw std::invalid_argument(where + ": config cannot nest itself");
        }
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        }
        if (!given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

/// "a:b:n" -> n log-spaced-in-dB (i.e. linear in dB) points from a to b.
std::vector<double> parse_db_range(const std::string& text, const std::string& what) {
    std::vector<double> parts = parse_double_list(text, ':', what);
    if (parts.size() == 1) {
        return {parts[0]};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument(what + ": expected 'a:b:n' or a single value");
    }
    const int count = static_cast<int>(parts[2]);
    if (count < 2 || static_cast<double>(count) != parts[2]) {
        throw std::invalid_argument(what + ": point count must be an integer >= 2");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (parts[1] - parts[0]) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = parts[0] + step * static_cast<double>(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand: matrix

int cmd_matrix(const ConverterCli& conv_cli, double eta) {
    ConverterSpec spec = build_converter(conv_cli);
    ResolvedConverter rc = aqtsim::resolve_scattering(spec);
    AQTPlan plan = aqtsim::plan_feedforward(rc.s, rc.partition, eta);
    SymplecticMatrix s_eff = aqtsim::effective_scattering(rc.s, plan);

    ojson j;
    j["m"] = rc.partition.m;
    j["n"] = rc.partition.n;
    j["squeeze_phases"] = rc.partition.squeeze_or_zero();
    j["measure_phases"] = rc.partition.measure_or_zero();
    j["s"] = mat_json(rc.s.matrix());
    j["matching_defect"] = aqtsim::matching_defect(rc.s, rc.partition);
    j["f_star"] = mat_json(plan.f_star);
    j["f"] = mat_json(plan.f);
    j["s_tilde"] = mat_json(s_eff.matrix());
    j["symplectic_residual"] = aqtsim::symplectic_defect(s_eff.matrix());
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// Subcommand: sweep

struct SweepCli {
    ConverterCli conv;
    std::string protocol = "aqt";
    std::string nu_db_range;
    std::string munu_db_range;
    std::vector<double> mu_db_list;
    double eta = 1.0;
    double prior_photons = 10.0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_path;
    CLI::Option* nu_opt = nullptr;
    CLI::Option* munu_opt = nullptr;
    CLI::Option* mu_opt = nullptr;
    CLI::Option* eta_opt = nullptr;
};

int cmd_sweep(const SweepCli& cli) {
    ConverterSpec spec = build_converter(cli.conv);
    ResolvedConverter rc = aqtsim::resolve_scattering(spec);
    const int n_anc = rc.partition.n;
    const bool dqt = cli.protocol == "dqt";

    // Grid: (nu_db, mu_db) pairs in row order.
    std::vector<std::pair<double, double>> grid;
    if (*cli.munu_opt) {
        for (double total : parse_db_range(cli.munu_db_range, "--munu-db")) {
            grid.emplace_back(total / 2.0, total / 2.0);
        }
    } else {
        std::vector<double> nu_axis = parse_db_range(cli.nu_db_range, "--nu-db");
        std::vector<double> mu_list = cli.mu_db_list;
        if (*cli.eta_opt) {
            mu_list = {aqtsim::linear_to_db(mu_from_eta(cli.eta))};
        }
        if (mu_list.empty()) {
            mu_list = {0.0};
        }
        for (double nu_db : nu_axis) {
            for (double mu_db : mu_list) {
                grid.emplace_back(nu_db, mu_db);
            }
        }
    }

    const EffectiveChannel ch_dqt = aqtsim::dqt_channel(spec);
    const double t_abs = std::abs(ch_dqt.x.determinant());
    double threshold = std::numeric_limits<double>::quiet_NaN();
    try {
        threshold = aqtsim::capacity_threshold(spec);
    } catch (const std::exception&) {
        // No closed-form threshold for this converter kind; column stays NaN.
    }

    const std::string proto_name = dqt ? "dqt" : "aqt";
    std::vector<std::string> rows(grid.size());
    std::exception_ptr first_error;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size() || failed.load()) {
                return;
            }
            try {
                const double nu_db = grid[i].first;
                const double mu_db = grid[i].second;
                EffectiveChannel ch =
                    dqt ? ch_dqt
                        : aqtsim::aqt_channel(
                              spec, aqtsim::imperfections_for(n_anc,
                                                      aqtsim::db_to_linear(nu_db),
                                                      aqtsim::db_to_linear(mu_db)));
                const double fid =
                    aqtsim::average_coherent_fidelity(ch, cli.prior_photons);
                const double cap = aqtsim::capacity_lower_bound(ch).lower_bound;
                rows[i] = fmt_g(nu_db) + "," + fmt_g(mu_db) + "," + fmt_g(t_abs) +
                          "," + proto_name + "," + fmt_g(fid) + "," + fmt_g(cap) +
                          "," + fmt_g(threshold);
            } catch (...) {
                if (!failed.exchange(true)) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    int n_threads = cli.threads > 0
                        ? cli.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads,
                                          static_cast<int>(grid.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        std::rethrow_exception(first_error);
    }

    std::ostringstream csv;
    csv << "nu_db,mu_db,T,protocol,fidelity,capacity_lb,threshold_mu_nu\n";
    for (const std::string& row : rows) {
        csv << row << "\n";
    }
    if (cli.out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(cli.out_path);
        if (!out) {
            throw IoFailure("cannot open output file: " + cli.out_path);
        }
        out << csv.str();
        out.flush();
        if (!out) {
            throw IoFailure("write failed: " + cli.out_path);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Subcommand: capacity

int cmd_capacity(const ConverterCli& conv_cli, const std::string& protocol,
                 double nu_db, double mu_db, bool eta_given, double eta,
                 double prior_photons) {
    ConverterSpec spec = build_converter(conv_cli);
    ResolvedConverter rc = aqtsim::resolve_scattering(spec);
    if (eta_given) {
        mu_db = aqtsim::linear_to_db(mu_from_eta(eta));
    }
    const bool dqt = protocol == "dqt";
    EffectiveChannel ch =
        dqt ? aqtsim::dqt_channel(spec)
            : aqtsim::aqt_channel(spec, aqtsim::imperfections_for(
                                            rc.partition.n,
                                            aqtsim::db_to_linear(nu_db),
                                            aqtsim::db_to_linear(mu_db)));
    CapacityEstimate est = aqtsim::capacity_lower_bound(ch);

    ojson j;
    j["protocol"] = dqt ? "dqt" : "aqt";
    j["nu_db"] = nu_db;
    j["mu_db"] = mu_db;
    j["T"] = std::abs(aqtsim::dqt_channel(spec).x.determinant());
    j["fidelity"] = aqtsim::average_coherent_fidelity(ch, prior_photons);
    j["capacity_lb"] = est.lower_bound;
    j["argmax_input_photons"] = est.argmax_input_photons;
    j["diverged"] = est.diverged;
    try {
        j["threshold_mu_nu"] = aqtsim::capacity_threshold(spec);
    } catch (const std::exception&) {
        j["threshold_mu_nu"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// Subcommand: verify

int cmd_verify(const std::string& scenario, double n_traj_flag,
               std::uint64_t seed, int threads, int draws) {
    std::ostringstream out;
    int status = 0;
    if (scenario == "random-symplectic") {
        if (draws < 1) {
            throw std::invalid_argument("--draws must be >= 1");
        }
        aqtsim::SymplecticCheckReport rep =
            aqtsim::run_random_symplectic_check(draws, seed);
        out << "scenario random-symplectic\n";
        out << "draws " << rep.draws << "\n";
        out << "planning_rejections " << rep.planning_rejections << "\n";
        out << "failures " << rep.failures << "\n";
        out << "max_defect " << fmt_g(rep.max_defect) << "\n";
        out << "result " << (rep.pass ? "PASS" : "FAIL") << "\n";
        status = rep.pass ? 0 : 1;
    } else {
        if (!(n_traj_flag >= 10.0) || n_traj_flag > 1e15) {
            throw std::invalid_argument("--n-traj must lie in [10, 1e15]");
        }
        aqtsim::Scenario sc = aqtsim::scenario_by_name(scenario);
        aqtsim::VerifyReport rep = aqtsim::run_verify(
            sc, static_cast<std::int64_t>(n_traj_flag), seed, threads);

        out << "scenario " << rep.scenario << "\n";
        out << "n_traj " << rep.empirical.n_traj << "\n";
        out << "seed " << seed << "\n";
        const int dim = static_cast<int>(rep.z_v.rows());
        std::string worst_name = "z_x";
        int worst_i = 0;
        int worst_j = 0;
        double worst = -1.0;
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                out << "z_x " << i << " " << j << " " << fmt_g(rep.z_x(i, j))
                    << "\n";
                if (std::abs(rep.z_x(i, j)) > worst) {
                    worst = std::abs(rep.z_x(i, j));
                    worst_name = "z_x";
                    worst_i = i;
                    worst_j = j;
                }
            }
        }
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                out << "z_v " << i << " " << j << " " << fmt_g(rep.z_v(i, j))
                    << "\n";
                if (std::abs(rep.z_v(i, j)) > worst) {
                    worst = std::abs(rep.z_v(i, j));
                    worst_name = "z_v";
                    worst_i = i;
                    worst_j = j;
                }
            }
        }
        out << "max_abs_z " << fmt_g(rep.max_abs_z) << "\n";
        out << "worst " << worst_name << " " << worst_i << " " << worst_j << " "
            << fmt_g(worst) << "\n";
        out << "result " << (rep.pass ? "PASS" : "FAIL") << "\n";
        status = rep.pass ? 0 : 1;
    }
    std::cout << out.str();
    return status;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{
        "aqt-sim: symplectic scattering model of bosonic transduction with "
        "squeezed-ancilla feedforward"};
    app.name("aqt-sim");
    app.require_subcommand(1);
    std::string config_path;  // value consumed by apply_config_file

    // matrix
    CLI::App* matrix = app.add_subcommand(
        "matrix", "resolve a converter and print its blocks as JSON");
    ConverterCli matrix_conv;
    add_converter_flags(matrix, matrix_conv);
    double matrix_eta = 1.0;
    matrix->add_option("--eta", matrix_eta, "detector efficiency in (0,1]")
        ->check(CLI::Range(1e-12, 1.0));
    matrix->add_option("--config", config_path,
                       "key=value defaults file; explicit flags take precedence");

    // sweep
    CLI::App* sweep = app.add_subcommand(
        "sweep", "fidelity/capacity over an imperfection grid, CSV output");
    SweepCli sweep_cli;
    add_converter_flags(sweep, sweep_cli.conv);
    sweep->add_option("--protocol", sweep_cli.protocol, "dqt or aqt")
        ->check(CLI::IsMember({"dqt", "aqt"}))
        ->capture_default_str();
    sweep_cli.nu_opt = sweep->add_option("--nu-db", sweep_cli.nu_db_range,
                                         "squeeze imperfection sweep a:b:n in dB");
    sweep_cli.munu_opt =
        sweep->add_option("--munu-db", sweep_cli.munu_db_range,
                          "sweep of the mu*nu product a:b:n in dB, split evenly");
    sweep_cli.mu_opt = sweep->add_option("--mu-db", sweep_cli.mu_db_list,
                                         "detector imperfection values in dB")
                           ->delimiter(',');
    sweep_cli.eta_opt =
        sweep->add_option("--eta", sweep_cli.eta,
                          "detector efficiency in (0,1]; alternative to --mu-db");
    sweep->add_option("--prior-photons", sweep_cli.prior_photons,
                      "mean photon number of the coherent-state ensemble")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_cli.seed,
                      "reserved for sampled columns; output is closed-form");
    sweep->add_option("--threads", sweep_cli.threads,
                      "worker threads (0 = hardware)");
    sweep->add_option("--out", sweep_cli.out_path, "output CSV path (default stdout)");
    sweep->add_option("--config", config_path,
                      "key=value defaults file; explicit flags take precedence");
    sweep_cli.munu_opt->excludes(sweep_cli.nu_opt);
    sweep_cli.munu_opt->excludes(sweep_cli.mu_opt);
    sweep_cli.munu_opt->excludes(sweep_cli.eta_opt);
    sweep_cli.eta_opt->excludes(sweep_cli.mu_opt);

    // capacity
    CLI::App* capacity = app.add_subcommand(
        "capacity", "single-point capacity lower bound as JSON");
    ConverterCli cap_conv;
    add_converter_flags(capacity, cap_conv);
    std::string cap_protocol = "aqt";
    double cap_nu_db = -300.0;
    double cap_mu_db = -300.0;
    double cap_eta = 1.0;
    double cap_prior = 10.0;
    capacity->add_option("--protocol", cap_protocol, "dqt or aqt")
        ->check(CLI::IsMember({"dqt", "aqt"}))
        ->capture_default_str();
    capacity->add_option("--nu-db", cap_nu_db, "squeeze imperfection in dB")
        ->capture_default_str();
    CLI::Option* cap_mu_opt =
        capacity->add_option("--mu-db", cap_mu_db, "detector imperfection in dB")
            ->capture_default_str();
    CLI::Option* cap_eta_opt = capacity->add_option(
        "--eta", cap_eta, "detector efficiency in (0,1]; alternative to --mu-db");
    cap_eta_opt->excludes(cap_mu_opt);
    capacity->add_option("--prior-photons", cap_prior,
                         "mean photon number of the coherent-state ensemble")
        ->capture_default_str();
    capacity->add_option("--config", config_path,
                         "key=value defaults file; explicit flags take precedence");

    // verify
    CLI::App* verify = app.add_subcommand(
        "verify", "Monte-Carlo cross-check of the analytic channel");
    std::string verify_scenario = "minimal-bs";
    double verify_n_traj = 1e6;
    std::uint64_t verify_seed = 0;
    int verify_threads = 0;
    int verify_draws = 50;
    verify->add_option("--scenario", verify_scenario, "scenario name")
        ->check(CLI::IsMember(
            {"minimal-bs", "minimal-tms", "teleport-n2", "random-symplectic"}))
        ->capture_default_str();
    verify->add_option("--n-traj", verify_n_traj, "trajectory count")
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();
    verify->add_option("--threads", verify_threads, "worker threads (0 = hardware)");
    verify->add_option("--draws", verify_draws,
                       "network draws for random-symplectic")
        ->capture_default_str();
    verify->add_option("--config", config_path,
                       "key=value defaults file; explicit flags take precedence");

    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*matrix) {
        return cmd_matrix(matrix_conv, matrix_eta);
    }
    if (*sweep) {
        if (!*sweep_cli.nu_opt && !*sweep_cli.munu_opt) {
            throw std::invalid_argument("sweep needs --nu-db or --munu-db");
        }
        return cmd_sweep(sweep_cli);
    }
    if (*capacity) {
        return cmd_capacity(cap_conv, cap_protocol, cap_nu_db, cap_mu_db,
                            static_cast<bool>(*cap_eta_opt), cap_eta, cap_prior);
    }
    return cmd_verify(verify_scenario, verify_n_traj, verify_seed, verify_threads,
                      verify_draws);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const PlanningError& e) {
        std::cerr << "error: planning: " << e.what() << "\n";
        return 3;
    } catch (const ModelError& e) {
        std::cerr << "error: model: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        std::cerr << "error: truncation: " << e.what() << "\n";
        return 3;
    } catch (const IoFailure& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
