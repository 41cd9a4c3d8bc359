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

#ifndef chanlsp_lsp_estimation_H
#define chanlsp_lsp_estimation_H

#include "chanlsp/campaign_io.hpp"
#include "chanlsp/cir_processing.hpp"

#include <complex>
#include <span>
#include <string>

namespace chanlsp
{
    inline constexpr double speed_of_light_mps = 299792458.0;

    double mean_delay_s(const PowerDelayProfile &pdp);
    double rms_delay_spread_s(const PowerDelayProfile &pdp);

    struct KFactorConfig
    {
        double floor_db = -30.0;     // Reported when the moment ratio is >= 1
        double cap_db = 40.0;        // Upper clamp, reached by constant-magnitude sweeps
        bool linear_detrend = false; // Remove a linear power slope across the band first
    };

    struct KFactorEstimate
    {
        double gamma = 0.0;    // Var[G] / E[G]^2 with G = |H|^2
        double k_linear = 0.0; // +inf for gamma == 0, NaN when invalid
        double k_db = 0.0;     // Clamped to [floor_db, cap_db]
        std::size_t n_samples = 0;
        bool valid = false;  // gamma < 1
        bool capped = false; // k_db was clamped to cap_db
    };

    // Moment-method (Greenstein) estimator over the squared magnitudes of raw, unwindowed samples
    KFactorEstimate k_factor_greenstein(std::span<const std::complex<double>> samples, const KFactorConfig &cfg = {});
    KFactorEstimate k_factor_greenstein(const FrequencySweep &raw_sweep, const KFactorConfig &cfg = {});
    KFactorEstimate k_factor_from_gamma(double gamma, std::size_t n_samples, const KFactorConfig &cfg = {});

    enum class GainPolicy
    {
        Both,   // Subtract TX and RX antenna gains
        Single, // Subtract the TX antenna gain only
        None
    };
    std::string_view to_string(GainPolicy policy);
    GainPolicy parse_gain_policy(std::string_view text); // Throws InputError

    double gain_correction_db(const SweepConfig &config, GainPolicy policy);

    // -10 log10(mean |H|^2 / c) - gains, with c = sum(w^2)/N when window_correction is set and 1 otherwise.
    // Pass the windowed sweep; the correction undoes the taper's mean-power loss.
    double pathloss_db(const FrequencySweep &sweep, bool window_correction, GainPolicy policy = GainPolicy::Both);

    // Friis: 20 log10(4 pi d f / c)
    double free_space_pathloss_db(double distance_m, double frequency_hz);

    inline double excess_pathloss_db(double pathloss, double fspl) { return pathloss - fspl; }

    struct LargeScaleParams
    {
        std::string link_id;
        std::string tx_id;
        std::string rx_id;
        LosClass los = LosClass::UNKNOWN;
        double distance_m = 0.0;
        double rms_ds_s = 0.0;
        double mean_delay_s = 0.0;
        double k_factor_db = 0.0;
        bool k_valid = false;
        double pathloss_db = 0.0;
        double free_space_pl_db = 0.0;
        double excess_pl_db = 0.0;
    };

    struct LspConfig
    {
        DenoiseConfig denoise;
        KFactorConfig k_factor;
        bool window_correction = true;
        GainPolicy gain_policy = GainPolicy::Both;
    };

    struct LinkResult
    {
        LargeScaleParams lsp;
        CirResult cir;
        KFactorEstimate k;
    };

    // Runs the whole per-link chain on a raw sweep: CIR + PDP, delay moments, K-factor, pathloss
    LinkResult estimate_link(const FrequencySweep &raw_sweep, const Link &link, double distance_m, const LspConfig &cfg);
}

#endif
