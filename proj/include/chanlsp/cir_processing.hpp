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

#ifndef chanlsp_cir_processing_H
#define chanlsp_cir_processing_H

#include "chanlsp/campaign_io.hpp"

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace chanlsp
{
    // Time-domain channel impulse response. Bin n holds delay n * delay_bin_s; the
    // transform uses 1/N scaling so a flat unit sweep maps to a unit tap at bin 0.
    struct ImpulseResponse
    {
        std::vector<std::complex<double>> taps;
        double delay_bin_s = 0.0; // 1 / (N * delta_f)
        std::string link_id;

        static constexpr const char *scaling = "1/N";

        std::size_t n_bins() const { return taps.size(); }
        double unambiguous_span_s() const { return delay_bin_s * double(taps.size()); }
    };

    struct DenoiseConfig
    {
        double noise_range_fraction = 0.1;   // Trailing share of bins used for the noise fit
        double sigma_multiplier = 4.0;       // Per-component amplitude limit in noise standard deviations
        double first_tap_db_window = 10.0;   // Candidate first taps lie within this range below the strongest tap
        double first_tap_time_window_s = 5e-9; // ... and at most this far before it
        std::optional<std::size_t> max_delay_cut; // Bins at or beyond are discarded; defaults to the noise range start

        void validate() const; // Throws std::invalid_argument
    };

    struct NoiseEstimate
    {
        double sigma_component = 0.0; // Std of the real and imaginary parts, pooled, zero mean
        std::size_t first_bin = 0;     // Inclusive noise range
        std::size_t last_bin = 0;
        std::size_t precursor_bins = 0; // Trailing bins read as negative delays, excluded from the fit
        double threshold_power = 0.0; // 2 * (sigma_multiplier * sigma_component)^2
        bool noise_free = false;      // Set when the noise range is identically zero
    };

    struct PowerDelayProfile
    {
        std::vector<double> delays_s; // Relative to the first detected tap
        std::vector<double> powers;   // Linear tap powers
        double first_tap_abs_delay_s = 0.0; // Negative when the first tap is a wrapped precursor
        double total_power = 0.0;
        std::ptrdiff_t first_tap_bin = 0; // Signed: -k refers to IR bin N - k
        std::size_t strongest_bin = 0;
        std::vector<std::string> flags; // Decisions taken while selecting the first tap

        std::size_t size() const { return powers.size(); }
    };

    // Periodic-free Hann taper w_k = 0.5 (1 - cos(2 pi k / (N-1))), zero at both ends
    std::vector<double> hann_window(std::size_t n);

    // Sum of w_k^2 / N, the mean-power factor introduced by the taper (about 0.375 for large N)
    double hann_power_ratio(std::size_t n);

    FrequencySweep apply_window(const FrequencySweep &sweep);

    // Inverse DFT with 1/N scaling, h[n] = 1/N sum_k H_k exp(+j 2 pi k n / N)
    ImpulseResponse to_impulse_response(const FrequencySweep &sweep);
    std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> samples);

    // The circular transform folds energy arriving just before delay 0 (the window main lobe of an
    // early path) into the last bins. The last floor(first_tap_time_window / delay_bin) bins are
    // read as negative delays: they never enter the noise fit and can only be admitted as
    // first-tap precursors.
    std::size_t precursor_bins(const ImpulseResponse &ir, const DenoiseConfig &cfg);

    // Noise range: the noise_range_fraction * N bins that end right before the precursor bins
    NoiseEstimate estimate_noise(const ImpulseResponse &ir, const DenoiseConfig &cfg);

    // Threshold, cut the tail, select the first tap and re-reference delays to it.
    // Throws NoSignalError when no tap survives the threshold.
    PowerDelayProfile denoise(const ImpulseResponse &ir, const NoiseEstimate &noise, const DenoiseConfig &cfg);

    // Full chain used by the pipeline: window, transform, noise fit, denoise
    struct CirResult
    {
        ImpulseResponse ir;
        NoiseEstimate noise;
        PowerDelayProfile pdp;
    };
    CirResult process_sweep(const FrequencySweep &raw_sweep, const DenoiseConfig &cfg);

    // PDP export: CSV "delay_ns,power_db" with optional '#' comment preamble, plus a JSON sidecar
    std::string pdp_to_csv(const PowerDelayProfile &pdp, const std::vector<std::string> &comment_lines = {});
    nlohmann::ordered_json pdp_sidecar(const PowerDelayProfile &pdp, const NoiseEstimate &noise, const DenoiseConfig &cfg);
    nlohmann::ordered_json to_json(const DenoiseConfig &cfg);
}

#endif
