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

#ifndef chanlsp_pipeline_H
#define chanlsp_pipeline_H

#include "chanlsp/lsp_estimation.hpp"
#include "chanlsp/stats_compare.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chanlsp
{
    std::string toolkit_version();

    // Comment preamble ("# ...") carried by every CSV the toolkit writes
    std::vector<std::string> provenance_lines(const nlohmann::ordered_json &config);

    // CSV: link_id,tx,rx,los,distance_m,rms_ds_ns,mean_delay_ns,k_db,k_valid,pl_db,fspl_db,epl_db
    std::string lsp_table_to_csv(const std::vector<LargeScaleParams> &rows, const std::vector<std::string> &comment_lines = {});

    struct LspTable
    {
        std::vector<LargeScaleParams> rows;
        nlohmann::ordered_json config; // Config echo recovered from the "# config:" line, null if absent
    };
    LspTable parse_lsp_table(std::string_view csv);
    LspTable load_lsp_table(const std::filesystem::path &path);

    struct ProcessOptions
    {
        std::filesystem::path manifest;
        std::filesystem::path out_dir;
        LspConfig lsp;
        bool export_pdp = false;
        unsigned threads = 0; // 0 picks the hardware concurrency
    };

    struct LinkFailure
    {
        std::string link_id;
        std::string error;
    };

    struct ProcessSummary
    {
        std::vector<LargeScaleParams> rows;
        std::vector<LinkFailure> failures;
        nlohmann::ordered_json run_log;
    };

    nlohmann::ordered_json process_config_echo(const ProcessOptions &opts);

    // Writes lsp.csv, run_log.json and optionally pdp/<link>.csv + .json into out_dir.
    // Per-link failures are recorded and skipped; the caller decides the exit status.
    ProcessSummary run_process(const ProcessOptions &opts);

    struct BenchmarkOptions
    {
        std::filesystem::path lsp_table;
        std::filesystem::path out_dir;
        BenchmarkConfig bench;
        std::optional<std::filesystem::path> coefficients; // Bundled table when empty
    };

    nlohmann::ordered_json benchmark_config_echo(const BenchmarkOptions &opts, const nlohmann::ordered_json &measurement_config);

    // Writes report.json, report.md and cdf/*.csv into out_dir
    ComparisonReport run_benchmark(const BenchmarkOptions &opts);

    struct SynthValidateOptions
    {
        std::uint64_t seed = 1;
        std::filesystem::path out_dir;
        SweepConfig sweep;
        DenoiseConfig denoise;
        GainPolicy gain_policy = GainPolicy::Both; // Checks always expect both gains removed
        bool window_correction = true;
        std::size_t greenstein_trials = 200;
    };

    struct ValidationCheck
    {
        std::string name;
        double error = 0.0;
        double tolerance = 0.0;
        std::string units;
        bool pass = false;
        std::string detail;
    };

    std::vector<ValidationCheck> run_synth_validate(const SynthValidateOptions &opts);

    // Writes validation.json and validation.csv, returns the printable table
    std::string write_validation_summary(const std::vector<ValidationCheck> &checks, const SynthValidateOptions &opts);
}

#endif
