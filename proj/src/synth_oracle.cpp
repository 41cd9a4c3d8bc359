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

#include "chanlsp/synth_oracle.hpp"
#include "chanlsp/lsp_estimation.hpp"
#include "chanlsp/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chanlsp
{
    FrequencySweep synth_sweep(const SyntheticTapSet &taps, const SweepConfig &cfg, std::string link_id)
    {
        cfg.validate();
        if (taps.taps.empty())
            throw std::invalid_argument("synthetic tap set needs at least one tap");
        const double span_s = 1.0 / cfg.delta_f_hz();
        for (const auto &t : taps.taps)
            if (!(t.delay_s >= 0.0 && t.delay_s < span_s))
                throw std::invalid_argument("synthetic tap delay outside the unambiguous span [0, " + std::to_string(span_s) + ") s");

        FrequencySweep sweep;
        sweep.config = cfg;
        sweep.link_id = std::move(link_id);
        sweep.samples.assign(cfg.n_points, {0.0, 0.0});

        for (std::size_t k = 0; k < cfg.n_points; ++k)
        {
            const double f = cfg.frequency_hz(k);
            std::complex<double> h{0.0, 0.0};
            for (const auto &t : taps.taps)
                h += t.amplitude * std::polar(1.0, -2.0 * std::numbers::pi * f * t.delay_s);
            sweep.samples[k] = h;
        }

        if (taps.noise_sigma_component > 0.0)
        {
            NormalStream normals(taps.seed);
            for (auto &s : sweep.samples)
            {
                double re = normals.next();
                double im = normals.next();
                s += taps.noise_sigma_component * std::complex<double>(re, im);
            }
        }
        return sweep;
    }

    double noise_sigma_for_snr(const std::vector<SyntheticTap> &taps, double snr_db)
    {
        double power = 0.0;
        for (const auto &t : taps)
            power += std::norm(t.amplitude);
        return std::sqrt(power / (2.0 * std::pow(10.0, snr_db / 10.0)));
    }

    std::vector<std::complex<double>> rician_samples(double k_db, double omega, std::size_t n, std::uint64_t seed)
    {
        if (n < 1)
            throw std::invalid_argument("rician_samples: n must be at least 1");
        if (!(omega > 0.0))
            throw std::invalid_argument("rician_samples: omega must be positive");

        double los_share, scatter_var;
        if (std::isinf(k_db) && k_db > 0.0)
        {
            los_share = 1.0;
            scatter_var = 0.0;
        }
        else
        {
            const double k = std::pow(10.0, k_db / 10.0);
            los_share = k / (k + 1.0);
            scatter_var = omega / (2.0 * (k + 1.0));
        }

        const double los = std::sqrt(los_share * omega);
        const double sigma = std::sqrt(scatter_var);
        std::vector<std::complex<double>> out(n);
        NormalStream normals(seed);
        for (auto &x : out)
        {
            double re = normals.next();
            double im = normals.next();
            x = {los + sigma * re, sigma * im};
        }
        return out;
    }

    double tap_set_rms_delay_spread_s(const std::vector<SyntheticTap> &taps)
    {
        double p_sum = 0.0, m1 = 0.0, m2 = 0.0;
        for (const auto &t : taps)
        {
            double p = std::norm(t.amplitude);
            p_sum += p;
            m1 += p * t.delay_s;
            m2 += p * t.delay_s * t.delay_s;
        }
        m1 /= p_sum;
        m2 /= p_sum;
        return std::sqrt(std::max(0.0, m2 - m1 * m1));
    }

    SyntheticCampaign make_synthetic_campaign(std::size_t n_tx, std::size_t n_rx, std::uint64_t seed,
                                              const SweepConfig &cfg, std::size_t silent_links)
    {
        if (n_tx == 0 || n_rx == 0)
            throw std::invalid_argument("synthetic campaign needs at least one TX and one RX");
        cfg.validate();

        constexpr double hall_length = 41.0, hall_width = 17.0;
        SyntheticCampaign c;
        c.layout.config = cfg;
        for (std::size_t t = 0; t < n_tx; ++t)
        {
            double x = hall_length * (double(t) + 0.5) / double(n_tx);
            c.layout.tx_nodes.push_back({"TX" + std::to_string(t), {x, 1.0, std::nullopt}});
        }
        const auto cols = std::size_t(std::ceil(std::sqrt(double(n_rx) * hall_length / hall_width)));
        const std::size_t rows = (n_rx + cols - 1) / cols;
        for (std::size_t r = 0; r < n_rx; ++r)
        {
            double x = hall_length * (double(r % cols) + 0.5) / double(cols);
            double y = 3.0 + (hall_width - 4.0) * (double(r / cols) + 0.5) / double(rows);
            c.layout.rx_nodes.push_back({"RX" + std::to_string(r), {x, y, std::nullopt}});
        }

        NormalStream normals(seed);
        const double f_c = cfg.center_hz();
        // |S21| follows the toolkit's pathloss convention (gains subtracted from the loss), so a lone
        // direct path reads back as free-space pathloss
        const double gain_lin = std::pow(10.0, -(cfg.antenna_gain_tx_db + cfg.antenna_gain_rx_db) / 20.0);
        std::size_t index = 0;
        for (const auto &tx : c.layout.tx_nodes)
        {
            for (const auto &rx : c.layout.rx_nodes)
            {
                Link link;
                link.tx_id = tx.id;
                link.rx_id = rx.id;
                link.id = tx.id + "-" + rx.id;
                link.sweep_file = "sweeps/" + link.id + ".csv";

                const double d = distance(tx.position, rx.position);
                const double los_delay = d / speed_of_light_mps;
                const double direct = gain_lin * speed_of_light_mps / (4.0 * std::numbers::pi * d * f_c);
                // Every third link across the hall is treated as obstructed
                const bool nlos = std::abs(tx.position.y_m - rx.position.y_m) > 0.5 * hall_width && (index % 3 == 1);
                link.los = nlos ? LosClass::NLOS : LosClass::LOS;

                SyntheticTapSet taps;
                taps.seed = seed * 1000003ULL + index;
                taps.taps.push_back({los_delay, {nlos ? direct * 0.25 : direct, 0.0}});
                // Exponentially decaying scatter, power time constant growing with distance
                const double decay_ns = 12.0 + 0.5 * d;
                for (int i = 1; i <= 10; ++i)
                {
                    double excess_ns = 6.0 * i + 4.0 * std::abs(normals.next());
                    double amp = direct * 0.55 * std::exp(-0.5 * excess_ns / decay_ns);
                    double phase = 2.0 * std::numbers::pi * normals.uniform_closed_open();
                    taps.taps.push_back({los_delay + excess_ns * 1e-9, std::polar(amp, phase)});
                }
                taps.noise_sigma_component = noise_sigma_for_snr(taps.taps, 35.0);

                if (index < silent_links)
                {
                    // Noise only, no propagation path
                    taps.taps = {{0.0, {0.0, 0.0}}};
                    taps.noise_sigma_component = direct * 0.01;
                }

                c.tap_sets.emplace(link.id, std::move(taps));
                c.layout.links.push_back(std::move(link));
                ++index;
            }
        }
        c.layout.validate();
        return c;
    }

    std::filesystem::path write_synthetic_campaign(const SyntheticCampaign &campaign, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        for (const auto &link : campaign.layout.links)
        {
            FrequencySweep sweep = synth_sweep(campaign.tap_sets.at(link.id), campaign.layout.config, link.id);
            write_sweep(dir / link.sweep_file, sweep);
        }
        auto manifest = dir / "manifest.json";
        save_campaign(campaign.layout, manifest);
        return manifest;
    }
}
