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

#include "chanlsp/lsp_estimation.hpp"
#include "chanlsp/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chanlsp
{
    namespace
    {
        void require_pdp(const PowerDelayProfile &pdp)
        {
            if (pdp.powers.empty() || pdp.powers.size() != pdp.delays_s.size())
                throw std::invalid_argument("empty power delay profile");
            if (!(pdp.total_power > 0.0))
                throw std::invalid_argument("power delay profile has no power");
        }

        double power_sum(const PowerDelayProfile &pdp)
        {
            double s = 0.0;
            for (double p : pdp.powers)
                s += p;
            return s;
        }
    }

    double mean_delay_s(const PowerDelayProfile &pdp)
    {
        require_pdp(pdp);
        double weighted = 0.0;
        for (std::size_t i = 0; i < pdp.size(); ++i)
            weighted += pdp.delays_s[i] * pdp.powers[i];
        return weighted / power_sum(pdp);
    }

    double rms_delay_spread_s(const PowerDelayProfile &pdp)
    {
        const double mu = mean_delay_s(pdp);
        double acc = 0.0;
        for (std::size_t i = 0; i < pdp.size(); ++i)
        {
            double d = pdp.delays_s[i] - mu;
            acc += d * d * pdp.powers[i];
        }
        return std::sqrt(acc / power_sum(pdp));
    }

    KFactorEstimate k_factor_from_gamma(double gamma, std::size_t n_samples, const KFactorConfig &cfg)
    {
        KFactorEstimate est;
        est.gamma = gamma;
        est.n_samples = n_samples;
        if (!(gamma < 1.0))
        {
            est.valid = false;
            est.k_linear = std::numeric_limits<double>::quiet_NaN();
            est.k_db = cfg.floor_db;
            return est;
        }
        est.valid = true;
        const double root = std::sqrt(1.0 - gamma);
        est.k_linear = gamma <= 0.0 ? std::numeric_limits<double>::infinity() : root / (1.0 - root);
        est.k_db = 10.0 * std::log10(est.k_linear);
        if (est.k_db > cfg.cap_db)
        {
            est.k_db = cfg.cap_db;
            est.capped = true;
        }
        if (est.k_db < cfg.floor_db)
            est.k_db = cfg.floor_db;
        return est;
    }

    KFactorEstimate k_factor_greenstein(std::span<const std::complex<double>> samples, const KFactorConfig &cfg)
    {
        const std::size_t n = samples.size();
        if (n < 2)
            throw std::invalid_argument("K-factor estimation needs at least 2 samples");

        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i)
            g[i] = std::norm(samples[i]);

        if (cfg.linear_detrend)
        {
            // Least-squares line through G over the sample index, then flatten to the mean level
            double mean_i = 0.5 * double(n - 1), mean_g = 0.0;
            for (double v : g)
                mean_g += v;
            mean_g /= double(n);
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                sxy += (double(i) - mean_i) * (g[i] - mean_g);
                sxx += (double(i) - mean_i) * (double(i) - mean_i);
            }
            const double slope = sxy / sxx;
            for (std::size_t i = 0; i < n; ++i)
            {
                double trend = mean_g + slope * (double(i) - mean_i);
                if (!(trend > 0.0))
                    throw std::domain_error("linear power trend crosses zero, cannot de-trend");
                g[i] *= mean_g / trend;
            }
        }

        double mean = 0.0;
        for (double v : g)
            mean += v;
        mean /= double(n);
        if (!(mean > 0.0))
            throw std::invalid_argument("K-factor estimation: zero mean power");

        double var = 0.0;
        for (double v : g)
            var += (v - mean) * (v - mean);
        var /= double(n);

        return k_factor_from_gamma(var / (mean * mean), n, cfg);
    }

    KFactorEstimate k_factor_greenstein(const FrequencySweep &raw_sweep, const KFactorConfig &cfg)
    {
        return k_factor_greenstein(std::span<const std::complex<double>>(raw_sweep.samples), cfg);
    }

    std::string_view to_string(GainPolicy policy)
    {
        switch (policy)
        {
        case GainPolicy::Both:
            return "both";
        case GainPolicy::Single:
            return "single";
        default:
            return "none";
        }
    }

    GainPolicy parse_gain_policy(std::string_view text)
    {
        if (text == "both")
            return GainPolicy::Both;
        if (text == "single")
            return GainPolicy::Single;
        if (text == "none")
            return GainPolicy::None;
        throw InputError("invalid gain policy '" + std::string(text) + "', expected both, single or none");
    }

    double gain_correction_db(const SweepConfig &config, GainPolicy policy)
    {
        switch (policy)
        {
        case GainPolicy::Both:
            return config.antenna_gain_tx_db + config.antenna_gain_rx_db;
        case GainPolicy::Single:
            return config.antenna_gain_tx_db;
        default:
            return 0.0;
        }
    }

    double pathloss_db(const FrequencySweep &sweep, bool window_correction, GainPolicy policy)
    {
        if (sweep.samples.empty())
            throw std::invalid_argument("pathloss: empty sweep");
        double mean_power = 0.0;
        for (const auto &s : sweep.samples)
            mean_power += std::norm(s);
        mean_power /= double(sweep.samples.size());
        if (!(mean_power > 0.0))
            throw std::invalid_argument("pathloss: zero mean power");

        const double correction = window_correction ? hann_power_ratio(sweep.samples.size()) : 1.0;
        return -10.0 * std::log10(mean_power / correction) - gain_correction_db(sweep.config, policy);
    }

    double free_space_pathloss_db(double distance_m, double frequency_hz)
    {
        if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
            throw std::invalid_argument("free-space pathloss needs positive distance and frequency");
        return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / speed_of_light_mps);
    }

    LinkResult estimate_link(const FrequencySweep &raw_sweep, const Link &link, double distance_m, const LspConfig &cfg)
    {
        LinkResult r;
        const FrequencySweep windowed = apply_window(raw_sweep);
        r.cir.ir = to_impulse_response(windowed);
        r.cir.noise = estimate_noise(r.cir.ir, cfg.denoise);
        r.cir.pdp = denoise(r.cir.ir, r.cir.noise, cfg.denoise);
        r.k = k_factor_greenstein(raw_sweep, cfg.k_factor);

        LargeScaleParams &p = r.lsp;
        p.link_id = link.id;
        p.tx_id = link.tx_id;
        p.rx_id = link.rx_id;
        p.los = link.los;
        p.distance_m = distance_m;
        p.mean_delay_s = mean_delay_s(r.cir.pdp);
        p.rms_ds_s = rms_delay_spread_s(r.cir.pdp);
        p.k_factor_db = r.k.k_db;
        p.k_valid = r.k.valid;
        p.pathloss_db = pathloss_db(windowed, cfg.window_correction, cfg.gain_policy);
        p.free_space_pl_db = free_space_pathloss_db(distance_m, raw_sweep.config.center_hz());
        p.excess_pl_db = excess_pathloss_db(p.pathloss_db, p.free_space_pl_db);
        return r;
    }
}
