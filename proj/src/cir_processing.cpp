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

#include "chanlsp/cir_processing.hpp"
#include "chanlsp/errors.hpp"
#include "chanlsp/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace chanlsp
{
    namespace
    {
        // FFTW planning is not thread-safe, execution is
        std::mutex fftw_planner_mutex;

        struct PlanDeleter
        {
            void operator()(fftw_plan_s *plan) const
            {
                std::lock_guard lock(fftw_planner_mutex);
                fftw_destroy_plan(plan);
            }
        };
        using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

        constexpr double first_tap_time_epsilon_s = 1e-15;
    }

    void DenoiseConfig::validate() const
    {
        if (!(noise_range_fraction > 0.0 && noise_range_fraction < 1.0))
            throw std::invalid_argument("noise_range_fraction must lie in (0, 1)");
        if (!(sigma_multiplier > 0.0))
            throw std::invalid_argument("sigma_multiplier must be positive");
        if (!(first_tap_db_window > 0.0))
            throw std::invalid_argument("first_tap_db_window must be positive");
        if (!(first_tap_time_window_s > 0.0))
            throw std::invalid_argument("first_tap_time_window_s must be positive");
        if (max_delay_cut && *max_delay_cut == 0)
            throw std::invalid_argument("max_delay_cut must be positive");
    }

    std::vector<double> hann_window(std::size_t n)
    {
        if (n < 2)
            throw std::invalid_argument("Hann window needs at least 2 points");
        std::vector<double> w(n);
        double denom = double(n - 1);
        for (std::size_t k = 0; k < n; ++k)
            w[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(k) / denom));
        return w;
    }

    double hann_power_ratio(std::size_t n)
    {
        double sum = 0.0;
        for (double w : hann_window(n))
            sum += w * w;
        return sum / double(n);
    }

    FrequencySweep apply_window(const FrequencySweep &sweep)
    {
        FrequencySweep out = sweep;
        auto w = hann_window(sweep.samples.size());
        for (std::size_t k = 0; k < w.size(); ++k)
            out.samples[k] *= w[k];
        return out;
    }

    std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> samples)
    {
        const std::size_t n = samples.size();
        std::vector<std::complex<double>> in(samples.begin(), samples.end());
        std::vector<std::complex<double>> out(n);
        if (n == 0)
            return out;

        PlanPtr plan;
        {
            std::lock_guard lock(fftw_planner_mutex);
            plan.reset(fftw_plan_dft_1d(int(n), reinterpret_cast<fftw_complex *>(in.data()),
                                        reinterpret_cast<fftw_complex *>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE));
        }
        if (!plan)
            throw std::runtime_error("FFTW planning failed");
        fftw_execute(plan.get());

        const double scale = 1.0 / double(n);
        for (auto &v : out)
            v *= scale;
        return out;
    }

    ImpulseResponse to_impulse_response(const FrequencySweep &sweep)
    {
        ImpulseResponse ir;
        ir.taps = inverse_dft(sweep.samples);
        ir.delay_bin_s = 1.0 / (double(sweep.samples.size()) * sweep.config.delta_f_hz());
        ir.link_id = sweep.link_id;
        return ir;
    }

    std::size_t precursor_bins(const ImpulseResponse &ir, const DenoiseConfig &cfg)
    {
        if (!(ir.delay_bin_s > 0.0))
            throw std::invalid_argument("impulse response has no delay bin width");
        return std::size_t(std::floor((cfg.first_tap_time_window_s + first_tap_time_epsilon_s) / ir.delay_bin_s));
    }

    NoiseEstimate estimate_noise(const ImpulseResponse &ir, const DenoiseConfig &cfg)
    {
        cfg.validate();
        const std::size_t n = ir.n_bins();
        const auto n_noise = std::size_t(std::floor(cfg.noise_range_fraction * double(n)));
        if (n_noise < 30)
            throw std::invalid_argument("noise range too short: " + std::to_string(n_noise) + " bins, need at least 30");
        const std::size_t guard = precursor_bins(ir, cfg);
        if (n_noise + guard >= n)
            throw std::invalid_argument("noise range and precursor bins exceed the impulse response length");

        NoiseEstimate est;
        est.precursor_bins = guard;
        est.last_bin = n - guard - 1;
        est.first_bin = est.last_bin + 1 - n_noise;

        double sum_sq = 0.0;
        for (std::size_t b = est.first_bin; b <= est.last_bin; ++b)
            sum_sq += std::norm(ir.taps[b]);
        est.sigma_component = std::sqrt(sum_sq / double(2 * n_noise));

        if (est.sigma_component == 0.0)
        {
            est.noise_free = true;
            est.threshold_power = 0.0;
            return est;
        }
        const double limit = cfg.sigma_multiplier * est.sigma_component;
        est.threshold_power = 2.0 * limit * limit;
        return est;
    }

    PowerDelayProfile denoise(const ImpulseResponse &ir, const NoiseEstimate &noise, const DenoiseConfig &cfg)
    {
        cfg.validate();
        const auto n = std::ptrdiff_t(ir.n_bins());
        const auto cut = std::ptrdiff_t(std::min(cfg.max_delay_cut.value_or(noise.first_bin), ir.n_bins()));
        const auto guard = std::min<std::ptrdiff_t>(std::ptrdiff_t(noise.precursor_bins), n - cut);

        auto power_at = [&](std::ptrdiff_t signed_bin) { return std::norm(ir.taps[std::size_t(signed_bin < 0 ? signed_bin + n : signed_bin)]); };
        auto above = [&](std::ptrdiff_t b)
        {
            double p = power_at(b);
            return p > 0.0 && p >= noise.threshold_power;
        };

        // Signed bins in ascending delay: wrapped precursors first, then [0, cut)
        std::vector<std::ptrdiff_t> survivors;
        for (std::ptrdiff_t b = -guard; b < cut; ++b)
            if (above(b))
                survivors.push_back(b);

        std::optional<std::ptrdiff_t> strongest;
        for (std::ptrdiff_t b : survivors)
            if (b >= 0 && (!strongest || power_at(b) > power_at(*strongest)))
                strongest = b;
        if (!strongest)
            throw NoSignalError("no detectable signal" + (ir.link_id.empty() ? std::string() : " on link '" + ir.link_id + "'"));

        PowerDelayProfile pdp;
        pdp.strongest_bin = std::size_t(*strongest);
        pdp.flags.push_back("first_tap_rule:earliest_within_db_window_then_time_window_admission");
        if (noise.noise_free)
            pdp.flags.push_back("noise_free_input");

        const double window = std::pow(10.0, -cfg.first_tap_db_window / 10.0);

        // t*: earliest survivor within the dB window of the strongest tap
        std::ptrdiff_t first = *strongest;
        for (std::ptrdiff_t b : survivors)
            if (power_at(b) >= power_at(*strongest) * window)
            {
                first = b;
                break;
            }

        // Early admission: a survivor no more than the time window before t* and within the dB window
        // of t* itself. A single pass, so admission does not chain backwards.
        const std::ptrdiff_t anchor = first;
        for (std::ptrdiff_t b : survivors)
        {
            if (b >= anchor)
                break;
            const double lead_s = double(anchor - b) * ir.delay_bin_s;
            if (lead_s <= cfg.first_tap_time_window_s + first_tap_time_epsilon_s && power_at(b) >= power_at(anchor) * window)
            {
                first = b;
                break;
            }
        }
        if (first != anchor)
            pdp.flags.push_back("early_tap_admitted_by_time_window");
        if (first != *strongest)
            pdp.flags.push_back("first_tap_precedes_strongest");
        if (first < 0)
            pdp.flags.push_back("first_tap_is_wrapped_precursor");

        pdp.first_tap_bin = first;
        pdp.first_tap_abs_delay_s = double(first) * ir.delay_bin_s;
        for (std::ptrdiff_t b : survivors)
        {
            if (b < first)
                continue;
            double p = power_at(b);
            pdp.delays_s.push_back(double(b - first) * ir.delay_bin_s);
            pdp.powers.push_back(p);
            pdp.total_power += p;
        }
        return pdp;
    }

    CirResult process_sweep(const FrequencySweep &raw_sweep, const DenoiseConfig &cfg)
    {
        CirResult r;
        r.ir = to_impulse_response(apply_window(raw_sweep));
        r.noise = estimate_noise(r.ir, cfg);
        r.pdp = denoise(r.ir, r.noise, cfg);
        return r;
    }

    std::string pdp_to_csv(const PowerDelayProfile &pdp, const std::vector<std::string> &comment_lines)
    {
        std::string out;
        for (const auto &c : comment_lines)
            out += "# " + c + "\n";
        out += "delay_ns,power_db\n";
        for (std::size_t i = 0; i < pdp.size(); ++i)
        {
            out += text::format_sig(pdp.delays_s[i] * 1e9, 12);
            out += ',';
            out += text::format_sig(10.0 * std::log10(pdp.powers[i]), 12);
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json to_json(const DenoiseConfig &cfg)
    {
        nlohmann::ordered_json j;
        j["noise_range_fraction"] = cfg.noise_range_fraction;
        j["sigma_multiplier"] = cfg.sigma_multiplier;
        j["first_tap_db_window"] = cfg.first_tap_db_window;
        j["first_tap_time_window_ns"] = cfg.first_tap_time_window_s * 1e9;
        if (cfg.max_delay_cut)
            j["max_delay_cut"] = *cfg.max_delay_cut;
        else
            j["max_delay_cut"] = "noise_range_start";
        return j;
    }

    nlohmann::ordered_json pdp_sidecar(const PowerDelayProfile &pdp, const NoiseEstimate &noise, const DenoiseConfig &cfg)
    {
        nlohmann::ordered_json j;
        j["noise"] = {{"sigma_component", noise.sigma_component},
                      {"noise_range", {noise.first_bin, noise.last_bin}},
                      {"precursor_bins", noise.precursor_bins},
                      {"threshold_power", noise.threshold_power},
                      {"noise_free", noise.noise_free}};
        j["denoise_config"] = to_json(cfg);
        j["idft_scaling"] = ImpulseResponse::scaling;
        j["first_tap_abs_delay_ns"] = pdp.first_tap_abs_delay_s * 1e9;
        j["first_tap_bin"] = pdp.first_tap_bin;
        j["strongest_bin"] = pdp.strongest_bin;
        j["n_taps"] = pdp.size();
        j["total_power"] = pdp.total_power;
        j["flags"] = pdp.flags;
        return j;
    }
}
