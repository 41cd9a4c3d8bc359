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

#include "chanlsp/errors.hpp"
#include "chanlsp/inf_model.hpp"
#include "chanlsp/pipeline.hpp"
#include "chanlsp/synth_oracle.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{
    // Exit codes
    constexpr int exit_ok = 0;
    constexpr int exit_input_error = 2;
    constexpr int exit_validation_failed = 3;
    constexpr int exit_all_links_failed = 4;

    void add_denoise_flags(CLI::App *cmd, chanlsp::DenoiseConfig &cfg, double &time_window_ns)
    {
        cmd->add_option("--denoise.sigma-mult", cfg.sigma_multiplier, "Noise threshold in per-component standard deviations")
            ->capture_default_str();
        cmd->add_option("--denoise.noise-fraction", cfg.noise_range_fraction, "Trailing fraction of IR bins used for the noise fit")
            ->capture_default_str();
        cmd->add_option("--first-tap.db-window", cfg.first_tap_db_window, "First-tap candidates lie within this many dB of the strongest tap")
            ->capture_default_str();
        cmd->add_option("--first-tap.time-window-ns", time_window_ns, "... and at most this many ns before it")->capture_default_str();
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"chanlsp - large-scale channel parameters from VNA sweeps, benchmarked against 3GPP InF"};
    app.set_version_flag("--version", chanlsp::toolkit_version());
    app.require_subcommand(1);

    std::string gain_policy = "both";
    double time_window_ns = 5.0;

    // process
    chanlsp::ProcessOptions process;
    bool no_window_correction = false;
    std::string process_out;
    auto *cmd_process = app.add_subcommand("process", "Estimate per-link LSPs for a campaign manifest");
    cmd_process->add_option("manifest", process.manifest, "Campaign manifest JSON")->required()->check(CLI::ExistingFile);
    cmd_process->add_option("-o,--out", process_out, "Output directory")->required();
    cmd_process->add_flag("--no-window-correction", no_window_correction, "Do not undo the Hann window power loss in pathloss");
    cmd_process->add_option("--gain-policy", gain_policy, "Antenna gains removed from pathloss")
        ->check(CLI::IsMember({"both", "single", "none"}))
        ->capture_default_str();
    cmd_process->add_option("--k-floor-db", process.lsp.k_factor.floor_db, "K-factor reported when the moment ratio is >= 1")
        ->capture_default_str();
    cmd_process->add_flag("--k-detrend", process.lsp.k_factor.linear_detrend, "Remove a linear power slope before the K-factor estimate");
    cmd_process->add_flag("--export-pdp", process.export_pdp, "Write per-link PDP CSV and JSON sidecar files");
    cmd_process->add_option("--threads", process.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
    add_denoise_flags(cmd_process, process.lsp.denoise, time_window_ns);

    // benchmark
    chanlsp::BenchmarkOptions bench;
    std::string hall = "41x17x5";
    std::string coefficients, bench_out;
    auto *cmd_bench = app.add_subcommand("benchmark", "Compare an LSP table against 3GPP InF reference distributions");
    cmd_bench->add_option("lsp_table", bench.lsp_table, "LSP CSV produced by 'process'")->required()->check(CLI::ExistingFile);
    cmd_bench->add_option("-o,--out", bench_out, "Output directory")->required();
    cmd_bench->add_option("--hall", hall, "Hall geometry LxWxH in meters")->capture_default_str();
    cmd_bench->add_option("--seed", bench.bench.seed, "Base seed for model sampling")->capture_default_str();
    cmd_bench->add_option("--n-samples", bench.bench.n_samples, "Model samples per distribution")->check(CLI::PositiveNumber)->capture_default_str();
    cmd_bench->add_option("--fc-ghz", bench.bench.fc_ghz, "Carrier frequency for pathloss models")->capture_default_str();
    cmd_bench->add_option("--coefficients", coefficients, "Coefficient JSON overriding the bundled table")->check(CLI::ExistingFile);

    // synth-validate
    chanlsp::SynthValidateOptions validate;
    std::string validate_out;
    bool validate_no_window_correction = false;
    std::string validate_gain_policy = "both";
    double validate_time_window_ns = 5.0;
    auto *cmd_validate = app.add_subcommand("synth-validate", "Run the synthetic-channel oracle checks");
    cmd_validate->add_option("--seed", validate.seed, "Seed for synthetic channels")->capture_default_str();
    cmd_validate->add_option("-o,--out", validate_out, "Output directory for validation.json/csv");
    cmd_validate->add_option("--trials", validate.greenstein_trials, "Monte Carlo trials for the K-factor check")->capture_default_str();
    cmd_validate->add_flag("--no-window-correction", validate_no_window_correction, "Disable the Hann power correction (fault injection)");
    cmd_validate->add_option("--gain-policy", validate_gain_policy, "Antenna gains removed from pathloss (fault injection)")
        ->check(CLI::IsMember({"both", "single", "none"}))
        ->capture_default_str();
    add_denoise_flags(cmd_validate, validate.denoise, validate_time_window_ns);

    // synth-campaign
    std::size_t n_tx = 3, n_rx = 10, silent = 0;
    std::uint64_t campaign_seed = 1;
    std::string campaign_out;
    auto *cmd_campaign = app.add_subcommand("synth-campaign", "Write a synthetic campaign (manifest + sweep CSVs)");
    cmd_campaign->add_option("-o,--out", campaign_out, "Output directory")->required();
    cmd_campaign->add_option("--tx", n_tx, "Number of TX positions")->capture_default_str();
    cmd_campaign->add_option("--rx", n_rx, "Number of RX positions")->capture_default_str();
    cmd_campaign->add_option("--silent-links", silent, "Number of links carrying noise only")->capture_default_str();
    cmd_campaign->add_option("--seed", campaign_seed, "Seed")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // --help and --version exit cleanly; anything else is a usage error
        return app.exit(e) == 0 ? exit_ok : exit_input_error;
    }

    try
    {
        if (*cmd_process)
        {
            process.out_dir = process_out;
            process.lsp.window_correction = !no_window_correction;
            process.lsp.gain_policy = chanlsp::parse_gain_policy(gain_policy);
            process.lsp.denoise.first_tap_time_window_s = time_window_ns * 1e-9;
            process.lsp.denoise.validate();
            auto summary = chanlsp::run_process(process);
            for (const auto &f : summary.failures)
                std::cerr << "skipped link " << f.link_id << ": " << f.error << "\n";
            std::cout << summary.rows.size() << " links processed, " << summary.failures.size() << " skipped\n";
            if (summary.rows.empty())
                return exit_all_links_failed;
            return exit_ok;
        }
        if (*cmd_bench)
        {
            bench.out_dir = bench_out;
            bench.bench.hall = chanlsp::HallGeometry::parse(hall);
            if (!coefficients.empty())
                bench.coefficients = coefficients;
            auto report = chanlsp::run_benchmark(bench);
            for (const auto &s : report.sections)
            {
                std::cout << s.key << ": ";
                if (!s.has_data)
                    std::cout << "no data\n";
                else
                    std::cout << "mean delta " << s.mean_delta << ", KS " << s.ks << "\n";
            }
            return exit_ok;
        }
        if (*cmd_validate)
        {
            validate.out_dir = validate_out;
            validate.window_correction = !validate_no_window_correction;
            validate.gain_policy = chanlsp::parse_gain_policy(validate_gain_policy);
            validate.denoise.first_tap_time_window_s = validate_time_window_ns * 1e-9;
            validate.denoise.validate();
            auto checks = chanlsp::run_synth_validate(validate);
            std::cout << chanlsp::write_validation_summary(checks, validate);
            for (const auto &c : checks)
                if (!c.pass)
                    return exit_validation_failed;
            return exit_ok;
        }
        if (*cmd_campaign)
        {
            auto campaign = chanlsp::make_synthetic_campaign(n_tx, n_rx, campaign_seed, {}, silent);
            auto manifest = chanlsp::write_synthetic_campaign(campaign, campaign_out);
            std::cout << "wrote " << campaign.layout.links.size() << " links to " << manifest.string() << "\n";
            return exit_ok;
        }
    }
    catch (const chanlsp::InputError &e)
    {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
