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

#ifndef chanlsp_synth_oracle_H
#define chanlsp_synth_oracle_H

#include "chanlsp/campaign_io.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace chanlsp
{
    struct SyntheticTap
    {
        double delay_s = 0.0;
        std::complex<double> amplitude{1.0, 0.0};
    };

    struct SyntheticTapSet
    {
        std::vector<SyntheticTap> taps;
        double noise_sigma_component = 0.0; // Frequency-domain noise std per real/imag component
        std::uint64_t seed = 0;
    };

    // H(f_k) = sum_i a_i exp(-j 2 pi f_k tau_i) + n_k on the config grid. Delays need not be on the
    // IR bin grid. Throws std::invalid_argument for delays outside [0, 1/delta_f).
    FrequencySweep synth_sweep(const SyntheticTapSet &taps, const SweepConfig &cfg, std::string link_id = {});

    // Per-component noise std that puts sum |a_i|^2 at snr_db above the complex noise power 2 sigma^2
    double noise_sigma_for_snr(const std::vector<SyntheticTap> &taps, double snr_db);

    // Rician samples with mean power omega: LOS amplitude sqrt(K/(K+1) omega) plus complex Gaussian
    // scatter of per-component variance omega / (2 (K+1)). k_db = +inf gives the pure specular limit.
    std::vector<std::complex<double>> rician_samples(double k_db, double omega, std::size_t n, std::uint64_t seed);

    // Analytic RMS delay spread of a tap set, weighting delays by |a_i|^2
    double tap_set_rms_delay_spread_s(const std::vector<SyntheticTap> &taps);

    struct SyntheticCampaign
    {
        CampaignLayout layout;
        std::map<std::string, SyntheticTapSet> tap_sets; // Keyed by link id
    };

    // Campaign in a 41 m x 17 m hall: TX nodes along the long axis, RX nodes on a grid, one direct path
    // scaled by free-space loss and antenna gains plus exponentially decaying scatter. Links listed in
    // silent_links carry noise only.
    SyntheticCampaign make_synthetic_campaign(std::size_t n_tx, std::size_t n_rx, std::uint64_t seed,
                                              const SweepConfig &cfg = {}, std::size_t silent_links = 0);

    // Writes manifest.json plus one CSV per link into dir
    std::filesystem::path write_synthetic_campaign(const SyntheticCampaign &campaign, const std::filesystem::path &dir);
}

#endif
