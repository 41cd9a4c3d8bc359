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

#ifndef chanlsp_stats_compare_H
#define chanlsp_stats_compare_H

#include "chanlsp/campaign_io.hpp"
#include "chanlsp/inf_model.hpp"
#include "chanlsp/lsp_estimation.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chanlsp
{
    // Right-continuous empirical CDF: F(x) = #{v <= x} / n
    class Ecdf
    {
    public:
        explicit Ecdf(std::vector<double> values); // Throws std::invalid_argument on empty or non-finite input

        double operator()(double x) const;
        std::size_t n() const { return sorted_.size(); }
        const std::vector<double> &sorted_values() const { return sorted_; }

        // Smallest sample x with F(x) >= p, p in (0, 1]
        double quantile(double p) const;

        // One (value, F(value)) pair per distinct value, ties merged
        std::vector<std::pair<double, double>> points() const;

    private:
        std::vector<double> sorted_;
    };

    // Sup over the merged support of |F_a - F_b|
    double ks_distance(const Ecdf &a, const Ecdf &b);

    enum class LspParameter
    {
        RmsDelaySpread, // ns
        KFactor,        // dB
        Pathloss,       // dB
        ExcessPathloss  // dB
    };

    std::string_view parameter_name(LspParameter p); // Column-style key, e.g. "rms_ds_ns"
    std::string_view parameter_units(LspParameter p);

    // Value in reporting units (ns for delay spread, dB otherwise); nullopt for invalid K estimates
    std::optional<double> parameter_value(const LargeScaleParams &lsp, LspParameter p);

    struct SummaryStats
    {
        LosClass los = LosClass::LOS;
        std::string parameter;
        double mu = 0.0;
        double sigma = 0.0; // Unbiased, divisor n - 1
        std::size_t n = 0;
        std::size_t excluded = 0; // Links in class dropped because the parameter was invalid
        std::string units;
    };

    // Throws std::invalid_argument when fewer than two valid values remain in the class
    SummaryStats summarize(std::span<const LargeScaleParams> lsps, LosClass los, LspParameter p);

    inline constexpr std::array<double, 5> report_quantiles = {0.05, 0.25, 0.50, 0.75, 0.95};

    struct ComparisonSection
    {
        std::string key;        // e.g. "rms_ds_ns/LOS/InF"
        LspParameter parameter = LspParameter::RmsDelaySpread;
        LosClass los = LosClass::LOS;
        std::string model_name;
        nlohmann::ordered_json model_params;
        std::uint64_t model_seed = 0;

        bool has_data = false;
        std::optional<Ecdf> measured;
        std::optional<Ecdf> model;
        double model_center = 0.0; // Tabulated model location (10^mu for DS, mu for K, mean of per-link medians for PL)
        double ks = 0.0;
        double mean_delta = 0.0;        // model_center - measured mean
        double median_delta = 0.0;      // model_center - measured median
        double sample_mean_delta = 0.0; // model sample mean - measured mean
        std::optional<Ecdf> model_shadowed; // PL sections only: per-link medians plus shadow fading
    };

    struct BenchmarkConfig
    {
        HallGeometry hall;
        std::uint64_t seed = 1;
        std::size_t n_samples = 10000;
        double fc_ghz = 11.0;
        std::vector<std::string> nlos_pathloss_variants = {"InF-SL", "InF-DL"};
    };

    struct ComparisonReport
    {
        nlohmann::ordered_json config; // Echo of the benchmark and measurement configuration
        std::vector<SummaryStats> summaries;
        std::vector<std::string> missing_summaries; // "<parameter>/<class>" without enough data
        std::vector<ComparisonSection> sections;

        nlohmann::ordered_json to_json() const;
        std::string to_markdown() const;

        // File name -> CSV content ("value,probability"), one per section and source
        std::map<std::string, std::string> cdf_csvs(const std::vector<std::string> &comment_lines) const;
    };

    ComparisonReport build_report(std::span<const LargeScaleParams> measured, const BenchmarkConfig &cfg,
                                  const nlohmann::ordered_json &config_echo,
                                  const InfCoefficients &coeffs = InfCoefficients::bundled());
}

#endif
