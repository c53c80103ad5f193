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

#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"

#include "aqtsim/rng.hpp"
#include "aqtsim/scenarios.hpp"
#include "aqtsim/transducer.hpp"

using namespace aqtsim;

namespace {

ModePartition minimal_partition() {
    ModePartition p;
    p.m = 1;
    p.n = 1;
    return p;
}

}  // namespace

TEST_CASE("resolve_scattering delegates the minimal converters") {
    ResolvedConverter bs = resolve_scattering(BeamSplitterSpec{0.8});
    CHECK((bs.s.matrix() - beam_splitter(0.8).matrix()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK(bs.partition.m == 1);
    CHECK(bs.partition.n == 1);

    CHECK_THROWS_AS(resolve_scattering(BeamSplitterSpec{1.5}), std::domain_error);
    CHECK_THROWS_AS(resolve_scattering(TwoModeSqueezerSpec{0.5}), std::domain_error);
}

TEST_CASE("two-mode squeezer converter has gain on the conversion path") {
    ResolvedConverter tms = resolve_scattering(TwoModeSqueezerSpec{10.0});
    const Mat& s = tms.s.matrix();
    const double c = std::sqrt(11.0);
    const double g = std::sqrt(10.0);
    // Signal-out from signal-in carries sqrt(T'), signal-out from ancilla
    // carries sqrt(T' + 1); the P-side conversion is phase conjugated.
    CHECK(s(0, 0) == doctest::Approx(g));
    CHECK(s(0, 1) == doctest::Approx(c));
    CHECK(s(2, 2) == doctest::Approx(-g));
    CHECK(s(2, 3) == doctest::Approx(c));
    CHECK(is_symplectic(s, 1e-12));
}

TEST_CASE("cavity at unit cooperativity is a matched converter") {
    PhysicalCavitySpec cav;
    cav.g = 0.5;  // C = 4 g^2 / (k1 k2) = 1 at unit kappas
    ResolvedConverter rc = resolve_scattering(cav);
    ModePartition p = rc.partition;
    CHECK(matching_defect(rc.s, p) < 1e-9);
    // Full conversion: straight-through reflection vanishes.
    EffectiveChannel direct = dqt_channel(ConverterSpec{cav});
    CHECK(std::abs(direct.x.determinant()) == doctest::Approx(1.0));
    CHECK(direct.v.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("decoupled cavity reflects both ports") {
    PhysicalCavitySpec cav;  // g = g' = 0
    ResolvedConverter rc = resolve_scattering(cav);
    EffectiveChannel direct = dqt_channel(ConverterSpec{cav});
    CHECK(direct.x.cwiseAbs().maxCoeff() < 1e-12);  // no conversion at all
    // The resolved matrix swaps modes, so the reflected -1 sits off-diagonal
    // in mode space: each output equals minus the other port's input.
    const Mat& s = rc.s.matrix();
    CHECK(s(0, 1) == doctest::Approx(-1.0));
    CHECK(s(1, 0) == doctest::Approx(-1.0));
}

TEST_CASE("detuned parametric cavity cannot stay real") {
    PhysicalCavitySpec cav;
    cav.g = 0.4;
    cav.g_prime = 0.3;
    cav.delta_omega = 0.2;
    CHECK_THROWS_AS(resolve_scattering(cav), ModelError);

    // Detuning alone is fine: beam-splitter coupling commutes with it.
    PhysicalCavitySpec detuned;
    detuned.g = 0.4;
    detuned.delta_omega = 0.2;
    CHECK_NOTHROW(resolve_scattering(detuned));
    // Parametric coupling alone is fine on resonance.
    PhysicalCavitySpec par;
    par.g_prime = 0.3;
    CHECK_NOTHROW(resolve_scattering(par));
}

TEST_CASE("off-resonant cavity conversion degrades with detuning") {
    auto conversion = [](double dw) {
        PhysicalCavitySpec cav;
        cav.g = 0.5;
        cav.delta_omega = dw;
        return std::abs(dqt_channel(ConverterSpec{cav}).x.determinant());
    };
    const double t0 = conversion(0.0);
    const double t1 = conversion(0.3);
    const double t2 = conversion(0.8);
    CHECK(t0 == doctest::Approx(1.0));
    CHECK(t1 < t0);
    CHECK(t2 < t1);
}

TEST_CASE("imperfection parameter derivation and validation") {
    ImperfectionParams imp = ImperfectionParams::uniform(2, 0.5 * std::log(10.0),
                                                         0.0, 0.5);
    CHECK(imp.nu()[0] == doctest::Approx(0.1));
    CHECK(imp.nu_prime()[1] == doctest::Approx(10.0));
    CHECK(imp.mu()[0] == doctest::Approx(1.0));
    CHECK_NOTHROW(imp.validate(2));
    CHECK_THROWS_AS(imp.validate(3), std::invalid_argument);

    ImperfectionParams ideal = ImperfectionParams::ideal(1);
    CHECK(ideal.nu()[0] == 0.0);
    CHECK(ideal.mu()[0] == 0.0);

    ImperfectionParams bad = ImperfectionParams::uniform(1, -0.1, 0.0, 1.0);
    CHECK_THROWS_AS(bad.validate(1), std::domain_error);
    ImperfectionParams bad_eta = ImperfectionParams::uniform(1, 0.1, 0.0, 0.0);
    CHECK_THROWS_AS(bad_eta.validate(1), std::domain_error);
}

TEST_CASE("imperfections_for hits exact nu and mu targets") {
    ImperfectionParams a = imperfections_for(1, 0.1, 1.0);
    CHECK(a.nu()[0] == doctest::Approx(0.1));
    CHECK(a.mu()[0] == doctest::Approx(1.0));
    // nu above vacuum comes from a thermal ancilla, not anti-squeezing.
    ImperfectionParams b = imperfections_for(1, 2.5, 0.0);
    CHECK(b.nu()[0] == doctest::Approx(2.5));
    CHECK(b.nu_prime()[0] == doctest::Approx(2.5));
    CHECK(b.eta[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(imperfections_for(1, -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("dB conversion helpers") {
    CHECK(db_to_linear(-10.0) == doctest::Approx(0.1));
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
}

TEST_CASE("feedforward gains for the minimal beam splitter") {
    SymplecticMatrix s = beam_splitter(0.64);
    AQTPlan plan = plan_feedforward(s, minimal_partition());
    // Only the P output needs correction; the gain is -sqrt(1-T)/sqrt(T).
    CHECK(plan.f_star(0, 0) == doctest::Approx(0.0));
    CHECK(plan.f_star(1, 0) == doctest::Approx(-0.75));
    CHECK((plan.f - plan.f_star).cwiseAbs().maxCoeff() == 0.0);

    AQTPlan matched = plan_feedforward(beam_splitter(1.0), minimal_partition());
    CHECK(matched.f_star.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("feedforward gains for the minimal two-mode squeezer") {
    ResolvedConverter rc = resolve_scattering(TwoModeSqueezerSpec{1.25});
    AQTPlan plan = plan_feedforward(rc.s, rc.partition);
    // The Q output needs no correction; the P gain is the block ratio
    // -S_{b',z'} / S_{h,z'} = sqrt(T'+1) / sqrt(T').
    CHECK(plan.f_star(0, 0) == doctest::Approx(0.0));
    CHECK(plan.f_star(1, 0) == doctest::Approx(std::sqrt(2.25 / 1.25)));
}

TEST_CASE("detector efficiency scales the applied gains") {
    SymplecticMatrix s = beam_splitter(0.64);
    AQTPlan plan = plan_feedforward(s, minimal_partition(), 0.25);
    CHECK(plan.f(1, 0) == doctest::Approx(-0.75 / 0.5));
    CHECK(plan.f_star(1, 0) == doctest::Approx(-0.75));
}

TEST_CASE("planning fails loudly when the measured block is singular") {
    // A fully reflective splitter never routes the anti-squeezed ancilla
    // quadrature onto the measured idler port.
    SymplecticMatrix swap = beam_splitter(0.0);
    CHECK_THROWS_WITH_AS(plan_feedforward(swap, minimal_partition()),
                         doctest::Contains("S_{h,z'}"), PlanningError);
}

TEST_CASE("effective scattering restores the matched map") {
    SymplecticMatrix s = beam_splitter(0.64);
    AQTPlan plan = plan_feedforward(s, minimal_partition());
    Mat s_eff = effective_scattering(s, plan).matrix();
    CHECK(s_eff(0, 0) == doctest::Approx(0.8));
    CHECK(s_eff(1, 1) == doctest::Approx(1.25));
    CHECK(std::abs(s_eff(0, 1)) < 1e-12);
    CHECK(std::abs(s_eff(1, 0)) < 1e-12);

    ResolvedConverter tms = resolve_scattering(TwoModeSqueezerSpec{10.0});
    AQTPlan tplan = plan_feedforward(tms.s, tms.partition);
    Mat t_eff = effective_scattering(tms.s, tplan).matrix();
    CHECK(t_eff(0, 0) == doctest::Approx(std::sqrt(10.0)));
    CHECK(t_eff(1, 1) == doctest::Approx(1.0 / std::sqrt(10.0)));
    CHECK(is_symplectic(t_eff, 1e-9));
}

TEST_CASE("noise covariance matches the minimal closed forms") {
    SUBCASE("beam splitter") {
        ResolvedConverter rc = resolve_scattering(BeamSplitterSpec{0.8});
        ImperfectionParams imp = imperfections_for(1, 0.1, 1.0);
        AQTPlan plan = plan_feedforward(rc.s, rc.partition, imp.eta);
        Mat v = noise_covariance(rc.s, rc.partition, plan, imp);
        CHECK(v(0, 0) == doctest::Approx(0.025).epsilon(1e-12));
        CHECK(v(1, 1) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(std::abs(v(0, 1)) < 1e-12);
    }
    SUBCASE("two-mode squeezer") {
        ResolvedConverter rc = resolve_scattering(TwoModeSqueezerSpec{10.0});
        ImperfectionParams imp = imperfections_for(1, 0.1, 0.1);
        AQTPlan plan = plan_feedforward(rc.s, rc.partition, imp.eta);
        Mat v = noise_covariance(rc.s, rc.partition, plan, imp);
        CHECK(v(0, 0) == doctest::Approx(0.11).epsilon(1e-12));
        CHECK(v(1, 1) == doctest::Approx(1.1).epsilon(1e-12));
    }
}

TEST_CASE("noise covariance is monotone in the imperfections") {
    ResolvedConverter rc = resolve_scattering(BeamSplitterSpec{0.37});
    auto smallest_eig_gap = [&](double nu1, double mu1, double nu2, double mu2) {
        ImperfectionParams ia = imperfections_for(1, nu1, mu1);
        ImperfectionParams ib = imperfections_for(1, nu2, mu2);
        AQTPlan pa = plan_feedforward(rc.s, rc.partition, ia.eta);
        AQTPlan pb = plan_feedforward(rc.s, rc.partition, ib.eta);
        Mat va = noise_covariance(rc.s, rc.partition, pa, ia);
        Mat vb = noise_covariance(rc.s, rc.partition, pb, ib);
        Eigen::SelfAdjointEigenSolver<Mat> es(vb - va);
        return es.eigenvalues().minCoeff();
    };
    CHECK(smallest_eig_gap(0.1, 0.2, 0.3, 0.2) > -1e-12);
    CHECK(smallest_eig_gap(0.1, 0.2, 0.1, 0.9) > -1e-12);
}

TEST_CASE("dqt channels of the minimal converters") {
    EffectiveChannel matched = dqt_channel(BeamSplitterSpec{1.0});
    CHECK((matched.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(matched.v.cwiseAbs().maxCoeff() < 1e-12);

    EffectiveChannel loss = dqt_channel(BeamSplitterSpec{0.8});
    CHECK((loss.x - std::sqrt(0.8) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((loss.v - 0.2 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(channel_is_physical(loss));

    // The amplifying converter reads out the conjugate signal, so the noise
    // floor is T' + 1 (complete positivity forbids T' - 1 for a
    // phase-conjugating map).
    EffectiveChannel amp = dqt_channel(TwoModeSqueezerSpec{10.0});
    CHECK(amp.x(0, 0) == doctest::Approx(std::sqrt(10.0)));
    CHECK(amp.x(1, 1) == doctest::Approx(-std::sqrt(10.0)));
    CHECK((amp.v - 11.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(channel_is_physical(amp));
    CHECK_FALSE(channel_is_physical(
        EffectiveChannel{amp.x, 9.0 * Mat::Identity(2, 2), Vec::Zero(2), 1}));
}

TEST_CASE("ideal aqt is the identity channel regardless of matching") {
    for (double t : {0.1, 0.5, 0.9}) {
        EffectiveChannel ch =
            aqt_channel(BeamSplitterSpec{t}, ImperfectionParams::ideal(1));
        CHECK((ch.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ch.v.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ch.d.cwiseAbs().maxCoeff() == 0.0);
    }
    EffectiveChannel amp =
        aqt_channel(TwoModeSqueezerSpec{4.0}, ImperfectionParams::ideal(1));
    CHECK((amp.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(amp.v.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("imperfect aqt matches the footnote covariance") {
    EffectiveChannel ch =
        aqt_channel(BeamSplitterSpec{0.1}, imperfections_for(1, 0.1, 0.1));
    CHECK(ch.v(0, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(ch.v(1, 1) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(channel_is_physical(ch));
}

TEST_CASE("teleport network adds isotropic noise set by the squeezing") {
    Scenario sc = teleport_scenario();
    EffectiveChannel ch = aqt_channel(sc.converter, sc.imp);
    const double expected = 2.0 * std::exp(-2.0);
    CHECK((ch.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(ch.v(0, 0) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(ch.v(1, 1) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(ch.v(0, 1)) < 1e-12);
}

TEST_CASE("apply_channel embeds the map on the selected mode") {
    EffectiveChannel loss = dqt_channel(BeamSplitterSpec{0.5});
    GaussianState in = tensor(GaussianState::coherent(std::complex<double>(1.0, 0.0)),
                              GaussianState::vacuum(1));
    GaussianState out = apply_channel(loss, in, {0});
    CHECK(out.mean()(0) == doctest::Approx(2.0 * std::sqrt(0.5)));
    CHECK(out.mean()(1) == doctest::Approx(0.0));
    CHECK(out.cov()(0, 0) == doctest::Approx(1.0));  // 0.5 + 0.5 vacuum noise
    CHECK(out.cov()(1, 1) == doctest::Approx(1.0));
}
