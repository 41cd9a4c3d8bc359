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

#ifndef chanlsp_inf_model_H
#define chanlsp_inf_model_H

#include "chanlsp/campaign_io.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace chanlsp
{
    struct HallGeometry
    {
        double length_m = 41.0;
        double width_m = 17.0;
        double height_m = 5.0;

        double volume_m3() const { return length_m * width_m * height_m; }
        double surface_m2() const { return 2.0 * (length_m * width_m + length_m * height_m + width_m * height_m); }
        double volume_to_surface_m() const { return volume_m3() / surface_m2(); }

        void validate() const; // Throws InputError
        std::string to_string() const; // "LxWxH"
        static HallGeometry parse(std::string_view text); // "41x17x5"
    };

    enum class DistributionKind
    {
        LognormalLog10, // value = 10^x, x ~ N(mu, sigma)
        Normal
    };

    struct LspDistribution
    {
        DistributionKind kind = DistributionKind::Normal;
        double mu = 0.0;    // log10(seconds) for delay spread, dB for K
        double sigma = 0.0;
        std::string units;  // Units of the sampled values: "s" or "dB"

        double median() const;        // 10^mu or mu
        double cdf(double x) const;   // Analytic CDF in sampled-value units
    };

    struct ValidityRange
    {
        double d_min_m = 1.0;
        double d_max_m = 600.0;
        double f_min_ghz = 0.5;
        double f_max_ghz = 100.0;
    };

    // PL = A + B log10(d3D/m) + C log10(fc/GHz), floored by the listed variants when apply_floor is set
    struct PathlossModel
    {
        std::string name;
        double A = 0.0;
        double B = 0.0;
        double C = 0.0;
        double shadow_sigma_db = 0.0;
        std::vector<std::string> floor_variants;
        bool apply_floor = true;
        ValidityRange validity;
        std::string source;

        double formula_db(double d3d_m, double fc_ghz) const; // Without floor or range checks
    };

    struct DelaySpreadCoefficients
    {
        double vs_scale = 0.0;     // lgDS mu = log10(vs_scale * V/S + vs_offset) + log10_offset
        double vs_offset = 0.0;
        double log10_offset = 0.0;
        double sigma_lg = 0.0;
        std::string source;
    };

    // Coefficient tables for the InF scenario, normally taken from data/inf_coefficients.json
    struct InfCoefficients
    {
        std::vector<PathlossModel> variants;
        DelaySpreadCoefficients los_ds;
        DelaySpreadCoefficients nlos_ds;
        double los_k_mu_db = 0.0;
        double los_k_sigma_db = 0.0;
        std::string k_source;

        const PathlossModel &variant(std::string_view name) const; // Throws InputError

        static InfCoefficients from_json(const nlohmann::json &j);
        static InfCoefficients load(const std::filesystem::path &path);
        static const InfCoefficients &bundled();
    };

    // Carrier frequency is accepted for interface symmetry with other scenarios; the InF delay-spread
    // model does not depend on it. Only LOS and NLOS are defined.
    LspDistribution inf_delay_spread_distribution(const HallGeometry &hall, LosClass los, double carrier_hz = 11e9,
                                                  const InfCoefficients &coeffs = InfCoefficients::bundled());

    LspDistribution inf_k_distribution(const InfCoefficients &coeffs = InfCoefficients::bundled());

    // Median pathloss in dB (no shadow fading). Throws std::out_of_range outside the validity range.
    double inf_pathloss_db(const PathlossModel &model, double d3d_m, double fc_ghz,
                           const InfCoefficients &coeffs = InfCoefficients::bundled());

    // InF-SL and InF-DL both reduce to InF-LOS for LOS links
    std::string_view pathloss_variant_for(std::string_view nlos_variant, LosClass los);

    struct SampleSet
    {
        std::vector<double> values;
        std::uint64_t seed = 0;
        std::size_t n = 0;
        std::string units;
    };

    SampleSet sample(const LspDistribution &dist, std::size_t n, std::uint64_t seed);
    SampleSet sample_shadow_fading(const PathlossModel &model, std::size_t n, std::uint64_t seed);
}

#endif
