// SPDX-License-Identifier: Apache-2.0
//
// chanlsp - channel sounding post-processing and InF benchmark toolkit
// Copyright (C) 2026 The chanlsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "chanlsp/errors.hpp"
#include "chanlsp/lsp_estimation.hpp"
#include "chanlsp/synth_oracle.hpp"

#include "../support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

using namespace chanlsp;
using Catch::Approx;
using cd = std::complex<double>;

namespace
{
    PowerDelayProfile make_pdp(const std::vector<std::pair<double, double>> &taps)
    {
        PowerDelayProfile pdp;
        for (auto [t, p] : taps)
        {
            pdp.delays_s.push_back(t);
            pdp.powers.push_back(p);
            pdp.total_power += p;
        }
        return pdp;
    }

    FrequencySweep flat_sweep(double magnitude, double g_tx, double g_rx)
    {
        FrequencySweep s;
        s.config.antenna_gain_tx_db = g_tx;
        s.config.antenna_gain_rx_db = g_rx;
        s.samples.assign(s.config.n_points, std::polar(magnitude, 0.3));
        return s;
    }

    double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }
}

TEST_CASE("Delay moments", "[lsp_estimation]")
{
    REQUIRE(mean_delay_s(make_pdp({{0.0, 1.0}})) == 0.0);
    REQUIRE(rms_delay_spread_s(make_pdp({{0.0, 1.0}})) == 0.0);
    REQUIRE(mean_delay_s(make_pdp({{0.0, 1.0}, {10e-9, 1.0}})) == Approx(5e-9).epsilon(1e-14));
    REQUIRE(rms_delay_spread_s(make_pdp({{0.0, 1.0}, {10e-9, 1.0}})) == Approx(5e-9).epsilon(1e-14));
    REQUIRE(mean_delay_s(make_pdp({{0.0, 1.0}, {10e-9, 3.0}})) == Approx(7.5e-9).epsilon(1e-14));
    REQUIRE_THROWS_AS(mean_delay_s(PowerDelayProfile{}), std::invalid_argument);
    REQUIRE_THROWS_AS(rms_delay_spread_s(PowerDelayProfile{}), std::invalid_argument);

    // 0 ns / 0 dB, 10 ns / -3 dB, 50 ns / -10 dB
    auto pdp = make_pdp({{0.0, 1.0}, {10e-9, std::pow(10.0, -0.3)}, {50e-9, 0.1}});
    REQUIRE(mean_delay_s(pdp) == Approx(6.2527805e-9).epsilon(1e-7));
    REQUIRE(rms_delay_spread_s(pdp) == Approx(12.179402987e-9).epsilon(1e-9));
}

TEST_CASE("Delay moment properties", "[lsp_estimation][property]")
{
    oracle::Gen gen(77);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<std::pair<double, double>> taps;
        for (std::size_t i = 0, n = gen.index(1, 40); i < n; ++i)
            taps.emplace_back(gen.uniform(0.0, 500e-9), std::pow(10.0, gen.uniform(-6.0, 0.0)));
        const auto [m_ref, s_ref] = oracle::delay_moments(taps);
        const auto pdp = make_pdp(taps);
        const double mu = mean_delay_s(pdp), sd = rms_delay_spread_s(pdp);
        REQUIRE(mu == Approx(m_ref).epsilon(1e-10).margin(1e-20));
        REQUIRE(sd == Approx(s_ref).epsilon(1e-9).margin(1e-18));
        REQUIRE(sd >= 0.0);

        // Scale invariance
        const double scale = std::pow(10.0, gen.uniform(-12.0, 12.0));
        auto scaled = taps;
        for (auto &t : scaled)
            t.second *= scale;
        REQUIRE(mean_delay_s(make_pdp(scaled)) == Approx(mu).epsilon(1e-12).margin(1e-22));
        REQUIRE(rms_delay_spread_s(make_pdp(scaled)) == Approx(sd).epsilon(1e-12).margin(1e-20));

        // Shift covariance
        const double shift = gen.uniform(-50e-9, 200e-9);
        auto shifted = taps;
        for (auto &t : shifted)
            t.first += shift;
        REQUIRE(mean_delay_s(make_pdp(shifted)) == Approx(mu + shift).margin(1e-18));
        REQUIRE(rms_delay_spread_s(make_pdp(shifted)) == Approx(sd).margin(1e-17));
    }
}

TEST_CASE("Greenstein K-factor", "[lsp_estimation]")
{
    SECTION("constant magnitude is the specular limit, capped")
    {
        auto k = k_factor_greenstein(flat_sweep(1e-3, 0, 0));
        REQUIRE(k.gamma == Approx(0.0).margin(1e-12));
        REQUIRE(k.capped);
        REQUIRE(k.valid);
        REQUIRE(k.k_db == 40.0);
        REQUIRE(k.n_samples == 2001);
        auto exact = k_factor_from_gamma(0.0, 100);
        REQUIRE(std::isinf(exact.k_linear));
    }

    SECTION("exact Rician moments invert exactly")
    {
        for (double k_db = -20.0; k_db <= 30.0; k_db += 0.5)
        {
            const double k = std::pow(10.0, k_db / 10.0);
            auto est = k_factor_from_gamma(oracle::rician_gamma(k), 2001);
            REQUIRE(est.valid);
            REQUIRE(est.k_linear == Approx(k).epsilon(1e-6));
            REQUIRE(est.k_db == Approx(k_db).margin(1e-6));
        }
    }

    SECTION("gamma >= 1 takes the floor path")
    {
        for (double g : {1.0, 1.3, 5.0})
        {
            auto est = k_factor_from_gamma(g, 500);
            REQUIRE_FALSE(est.valid);
            REQUIRE(est.k_db == -30.0);
            REQUIRE(std::isnan(est.k_linear));
        }
        KFactorConfig cfg;
        cfg.floor_db = -25.0;
        REQUIRE(k_factor_from_gamma(2.0, 500, cfg).k_db == -25.0);
    }

    SECTION("Rayleigh power samples drift to gamma = 1")
    {
        double previous_gap = 1.0;
        for (std::size_t n : {1000u, 100000u})
        {
            double gap = 0.0;
            int invalid = 0;
            for (std::uint64_t seed = 0; seed < 20; ++seed)
            {
                auto s = rician_samples(-std::numeric_limits<double>::infinity(), 1.0, n, seed);
                auto est = k_factor_greenstein(s);
                gap += std::abs(1.0 - est.gamma) / 20.0;
                invalid += est.valid ? 0 : 1;
            }
            REQUIRE(gap < previous_gap);
            REQUIRE(invalid >= 4); // roughly half land above 1 by chance
            previous_gap = gap;
        }
        REQUIRE(previous_gap < 0.02);
    }

    SECTION("K = 0 dB recovered within 1 dB (median over 200 trials)")
    {
        std::vector<double> est;
        for (std::uint64_t seed = 0; seed < 200; ++seed)
            est.push_back(k_factor_greenstein(rician_samples(0.0, 1.0, 2001, 900 + seed)).k_db);
        REQUIRE(median(est) == Approx(0.0).margin(1.0));
    }

    SECTION("de-trending removes a linear power slope")
    {
        FrequencySweep s = flat_sweep(1.0, 0, 0);
        for (std::size_t k = 0; k < s.samples.size(); ++k)
            s.samples[k] *= std::sqrt(1.0 + 2.0 * double(k) / 2000.0);
        KFactorConfig cfg;
        REQUIRE(k_factor_greenstein(s, cfg).k_db < 20.0);
        cfg.linear_detrend = true;
        REQUIRE(k_factor_greenstein(s, cfg).k_db == 40.0);
    }

    SECTION("zero power is an error")
    {
        REQUIRE_THROWS(k_factor_greenstein(flat_sweep(0.0, 0, 0)));
    }
}

TEST_CASE("Pathloss", "[lsp_estimation]")
{
    REQUIRE(pathloss_db(flat_sweep(1e-3, 0.0, 0.0), false) == Approx(60.0).margin(1e-9));
    REQUIRE(pathloss_db(flat_sweep(1e-3, 3.2, 3.2), false) == Approx(53.6).margin(1e-9));
    REQUIRE(pathloss_db(flat_sweep(1e-3, 3.2, 3.2), false, GainPolicy::Single) == Approx(56.8).margin(1e-9));
    REQUIRE(pathloss_db(flat_sweep(1e-3, 3.2, 3.2), false, GainPolicy::None) == Approx(60.0).margin(1e-9));

    // Correction exactly undoes the Hann taper's mean-power loss
    auto windowed = apply_window(flat_sweep(1e-3, 0.0, 0.0));
    REQUIRE(pathloss_db(windowed, true) == Approx(60.0).margin(1e-9));
    REQUIRE(pathloss_db(windowed, false) - 60.0 == Approx(4.26186).margin(1e-5));

    REQUIRE_THROWS(pathloss_db(flat_sweep(0.0, 0.0, 0.0), false));

    REQUIRE(parse_gain_policy("both") == GainPolicy::Both);
    REQUIRE(parse_gain_policy("single") == GainPolicy::Single);
    REQUIRE(parse_gain_policy("none") == GainPolicy::None);
    REQUIRE(to_string(GainPolicy::Single) == "single");
    REQUIRE_THROWS_AS(parse_gain_policy("rx"), InputError);
}

TEST_CASE("Free-space and excess pathloss", "[lsp_estimation]")
{
    REQUIRE(free_space_pathloss_db(1.0, 11e9) == Approx(53.27563692504787).margin(1e-9));
    REQUIRE(free_space_pathloss_db(10.0, 11e9) == Approx(73.27563692504787).margin(1e-9));
    REQUIRE(free_space_pathloss_db(speed_of_light_mps / (4.0 * std::numbers::pi * 11e9), 11e9) == Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(free_space_pathloss_db(0.0, 11e9), std::invalid_argument);
    REQUIRE_THROWS_AS(free_space_pathloss_db(1.0, -1.0), std::invalid_argument);

    oracle::Gen gen(5);
    for (int i = 0; i < 100; ++i)
    {
        double d = gen.uniform(0.1, 600.0), f = gen.uniform(0.5e9, 100e9);
        REQUIRE(free_space_pathloss_db(d, f) == Approx(oracle::friis_db(d, f)).margin(1e-9));
    }

    REQUIRE(excess_pathloss_db(73.27, 73.27) == 0.0);
    REQUIRE(excess_pathloss_db(70.0, 73.27) == Approx(-3.27).margin(1e-12));
}

TEST_CASE("Per-link estimation", "[lsp_estimation]")
{
    SweepConfig cfg;
    const double d = 12.5;
    const double a = std::pow(10.0, -6.4 / 20.0) * speed_of_light_mps / (4.0 * std::numbers::pi * d * cfg.center_hz());
    std::vector<SyntheticTap> taps = {{d / speed_of_light_mps, a}, {60e-9, a * 0.3}, {95e-9, a * 0.1}};
    SyntheticTapSet set{taps, noise_sigma_for_snr(taps, 40.0), 3};
    Link link{"T0-R0", "T0", "R0", LosClass::LOS, ""};
    auto r = estimate_link(synth_sweep(set, cfg, "T0-R0"), link, d, LspConfig{});

    REQUIRE(r.lsp.excess_pl_db == r.lsp.pathloss_db - r.lsp.free_space_pl_db);
    REQUIRE(r.lsp.free_space_pl_db == free_space_pathloss_db(d, 11e9));
    REQUIRE(r.lsp.rms_ds_s == Approx(tap_set_rms_delay_spread_s(taps)).epsilon(0.03));
    REQUIRE(r.lsp.k_valid == r.k.valid);
    REQUIRE(r.lsp.k_factor_db == r.k.k_db);
    REQUIRE(r.lsp.link_id == "T0-R0");
    REQUIRE(r.lsp.los == LosClass::LOS);
}
