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

#include "chanlsp/pipeline.hpp"
#include "chanlsp/bundled_data.hpp"
#include "chanlsp/errors.hpp"
#include "chanlsp/inf_model.hpp"
#include "chanlsp/synth_oracle.hpp"
#include "chanlsp/text_io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace chanlsp
{
    using ojson = nlohmann::ordered_json;

    std::string toolkit_version()
    {
        return CHANLSP_VERSION;
    }

    std::vector<std::string> provenance_lines(const ojson &config)
    {
        return {"chanlsp " + toolkit_version(), "config: " + config.dump()};
    }

    namespace
    {
        const char *lsp_header = "link_id,tx,rx,los,distance_m,rms_ds_ns,mean_delay_ns,k_db,k_valid,pl_db,fspl_db,epl_db";

        ojson k_config_json(const KFactorConfig &k)
        {
            return {{"floor_db", k.floor_db}, {"cap_db", k.cap_db}, {"linear_detrend", k.linear_detrend}, {"input", "raw (unwindowed) sweep"}};
        }

        std::optional<double> to_db(double linear)
        {
            if (!(linear > 0.0))
                return std::nullopt;
            return 10.0 * std::log10(linear);
        }
    }

    std::string lsp_table_to_csv(const std::vector<LargeScaleParams> &rows, const std::vector<std::string> &comment_lines)
    {
        std::string out;
        for (const auto &c : comment_lines)
            out += "# " + c + "\n";
        out += lsp_header;
        out += '\n';
        for (const auto &r : rows)
        {
            using text::format_double;
            out += r.link_id + "," + r.tx_id + "," + r.rx_id + "," + std::string(to_string(r.los)) + "," + format_double(r.distance_m) +
                   "," + format_double(r.rms_ds_s * 1e9) + "," + format_double(r.mean_delay_s * 1e9) + "," + format_double(r.k_factor_db) +
                   "," + (r.k_valid ? "1" : "0") + "," + format_double(r.pathloss_db) + "," + format_double(r.free_space_pl_db) + "," +
                   format_double(r.excess_pl_db) + "\n";
        }
        return out;
    }

    LspTable parse_lsp_table(std::string_view csv)
    {
        LspTable table;
        for (auto line : text::lines(csv, false))
        {
            if (line.front() != '#')
                continue;
            auto body = text::trim(line.substr(1));
            if (body.starts_with("config:"))
            {
                try
                {
                    table.config = ojson::parse(text::trim(body.substr(7)));
                }
                catch (const nlohmann::json::parse_error &)
                {
                    throw InputError("LSP table: malformed config comment");
                }
            }
        }

        auto rows = text::lines(csv, true);
        if (rows.empty() || text::trim(rows.front()) != lsp_header)
            throw InputError(std::string("LSP table: expected header '") + lsp_header + "'");

        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            auto cols = text::split(rows[i], ',');
            std::string where = "LSP table row " + std::to_string(i) + ": ";
            if (cols.size() != 12)
                throw InputError(where + "expected 12 columns");
            LargeScaleParams p;
            p.link_id = std::string(text::trim(cols[0]));
            p.tx_id = std::string(text::trim(cols[1]));
            p.rx_id = std::string(text::trim(cols[2]));
            p.los = parse_los_class(text::trim(cols[3]));
            double v[7];
            const std::size_t numeric_cols[7] = {4, 5, 6, 7, 9, 10, 11};
            for (int c = 0; c < 7; ++c)
                if (!text::parse_double(cols[numeric_cols[c]], v[c]) || !std::isfinite(v[c]))
                    throw InputError(where + "malformed number in column " + std::to_string(numeric_cols[c] + 1));
            auto valid = text::trim(cols[8]);
            if (valid != "0" && valid != "1" && valid != "true" && valid != "false")
                throw InputError(where + "k_valid must be 0 or 1");
            p.distance_m = v[0];
            p.rms_ds_s = v[1] * 1e-9;
            p.mean_delay_s = v[2] * 1e-9;
            p.k_factor_db = v[3];
            p.k_valid = valid == "1" || valid == "true";
            p.pathloss_db = v[4];
            p.free_space_pl_db = v[5];
            p.excess_pl_db = v[6];
            table.rows.push_back(std::move(p));
        }
        return table;
    }

    LspTable load_lsp_table(const std::filesystem::path &path)
    {
        try
        {
            return parse_lsp_table(text::read_file(path));
        }
        catch (const InputError &e)
        {
            throw InputError(path.string() + ": " + e.what());
        }
    }

    ojson process_config_echo(const ProcessOptions &opts)
    {
        ojson c;
        c["command"] = "process";
        c["manifest"] = opts.manifest.string();
        c["denoise"] = to_json(opts.lsp.denoise);
        c["k_factor"] = k_config_json(opts.lsp.k_factor);
        c["window_correction"] = opts.lsp.window_correction;
        c["gain_policy"] = std::string(to_string(opts.lsp.gain_policy));
        c["pathloss_input"] = "Hann-windowed sweep";
        c["idft_scaling"] = ImpulseResponse::scaling;
        c["export_pdp"] = opts.export_pdp;
        c["toolkit_version"] = toolkit_version();
        return c;
    }

    namespace
    {
        struct LinkOutcome
        {
            std::optional<LinkResult> result;
            std::string error;
        };

        std::string safe_file_stem(std::string id)
        {
            for (char &ch : id)
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.'))
                    ch = '_';
            return id;
        }
    }

    ProcessSummary run_process(const ProcessOptions &opts)
    {
        opts.lsp.denoise.validate();
        const CampaignLayout layout = load_campaign(opts.manifest);
        const ojson config = process_config_echo(opts);
        const auto comments = provenance_lines(config);

        std::vector<LinkOutcome> outcomes(layout.links.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]()
        {
            for (std::size_t i = next++; i < layout.links.size(); i = next++)
            {
                const Link &link = layout.links[i];
                try
                {
                    FrequencySweep sweep = load_sweep(layout.sweep_path(link), layout.config, link.id);
                    double d = link_distance(layout, link.tx_id, link.rx_id);
                    outcomes[i].result = estimate_link(sweep, link, d, opts.lsp);
                }
                catch (const std::exception &e)
                {
                    outcomes[i].error = e.what();
                }
            }
        };
        unsigned n_threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
        n_threads = unsigned(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, layout.links.size())));
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 1; t < n_threads; ++t)
                pool.emplace_back(worker);
            worker();
        }

        ProcessSummary summary;
        ojson per_link = ojson::array();
        for (std::size_t i = 0; i < layout.links.size(); ++i)
        {
            const Link &link = layout.links[i];
            const LinkOutcome &o = outcomes[i];
            ojson entry;
            entry["link_id"] = link.id;
            if (!o.result)
            {
                summary.failures.push_back({link.id, o.error});
                entry["status"] = "skipped";
                entry["error"] = o.error;
                per_link.push_back(std::move(entry));
                continue;
            }
            const LinkResult &r = *o.result;
            summary.rows.push_back(r.lsp);
            entry["status"] = "ok";
            entry["noise_sigma"] = r.cir.noise.sigma_component;
            if (auto t = to_db(r.cir.noise.threshold_power))
                entry["threshold_db"] = *t;
            else
                entry["threshold_db"] = nullptr;
            entry["noise_range"] = {r.cir.noise.first_bin, r.cir.noise.last_bin};
            entry["first_tap_ns"] = r.cir.pdp.first_tap_abs_delay_s * 1e9;
            entry["n_taps"] = r.cir.pdp.size();
            entry["k_gamma"] = r.k.gamma;
            std::vector<std::string> flags = r.cir.pdp.flags;
            if (!r.k.valid)
                flags.push_back("k_factor_invalid_floor_applied");
            if (r.k.capped)
                flags.push_back("k_factor_capped");
            entry["flags"] = flags;
            per_link.push_back(std::move(entry));

            if (opts.export_pdp)
            {
                auto stem = opts.out_dir / "pdp" / safe_file_stem(link.id);
                text::write_file(stem.string() + ".csv", pdp_to_csv(r.cir.pdp, comments));
                ojson side = pdp_sidecar(r.cir.pdp, r.cir.noise, opts.lsp.denoise);
                side["link_id"] = link.id;
                side["config"] = config;
                side["toolkit_version"] = toolkit_version();
                text::write_file(stem.string() + ".json", side.dump(2) + "\n");
            }
        }

        summary.run_log["config"] = config;
        summary.run_log["toolkit_version"] = toolkit_version();
        summary.run_log["n_links"] = layout.links.size();
        summary.run_log["n_processed"] = summary.rows.size();
        summary.run_log["n_skipped"] = summary.failures.size();
        summary.run_log["per_link"] = std::move(per_link);

        text::write_file(opts.out_dir / "lsp.csv", lsp_table_to_csv(summary.rows, comments));
        text::write_file(opts.out_dir / "run_log.json", summary.run_log.dump(2) + "\n");
        return summary;
    }

    ojson benchmark_config_echo(const BenchmarkOptions &opts, const ojson &measurement_config)
    {
        ojson c;
        c["command"] = "benchmark";
        c["lsp_table"] = opts.lsp_table.string();
        c["hall"] = {{"length_m", opts.bench.hall.length_m},
                     {"width_m", opts.bench.hall.width_m},
                     {"height_m", opts.bench.hall.height_m},
                     {"volume_to_surface_m", opts.bench.hall.volume_to_surface_m()}};
        c["seed"] = opts.bench.seed;
        c["seed_offsets"] = {{"rms_ds_LOS", 0}, {"rms_ds_NLOS", 1}, {"k_LOS", 2}, {"pl_shadowing_first", 3}};
        c["n_samples"] = opts.bench.n_samples;
        c["fc_ghz"] = opts.bench.fc_ghz;
        c["nlos_pathloss_variants"] = opts.bench.nlos_pathloss_variants;
        c["coefficients"] = opts.coefficients ? opts.coefficients->string() : std::string("bundled");
        c["normal_variates"] = "mt19937_64 + Box-Muller";
        c["measurement_config"] = measurement_config;
        c["toolkit_version"] = toolkit_version();
        return c;
    }

    ComparisonReport run_benchmark(const BenchmarkOptions &opts)
    {
        LspTable table = load_lsp_table(opts.lsp_table);
        if (table.rows.empty())
            throw InputError(opts.lsp_table.string() + ": LSP table has no rows");
        InfCoefficients coeffs = opts.coefficients ? InfCoefficients::load(*opts.coefficients) : InfCoefficients::bundled();

        const ojson config = benchmark_config_echo(opts, table.config);
        ComparisonReport report = build_report(table.rows, opts.bench, config, coeffs);

        ojson j = report.to_json();
        j["toolkit_version"] = toolkit_version();
        text::write_file(opts.out_dir / "report.json", j.dump(2) + "\n");
        text::write_file(opts.out_dir / "report.md", "<!-- chanlsp " + toolkit_version() + " -->\n" + report.to_markdown());
        for (const auto &[name, content] : report.cdf_csvs(provenance_lines(config)))
            text::write_file(opts.out_dir / "cdf" / name, content);
        return report;
    }

    namespace
    {
        double median_of(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }

        ValidationCheck make_check(std::string name, double error, double tolerance, std::string units, std::string detail)
        {
            ValidationCheck c{std::move(name), error, tolerance, std::move(units), error <= tolerance, std::move(detail)};
            if (!std::isfinite(error))
                c.pass = false;
            return c;
        }

        // Median Greenstein estimate (dB) over trials of i.i.d. Rician samples
        double greenstein_median_db(double k_db, std::size_t n, std::size_t trials, std::uint64_t seed)
        {
            std::vector<double> est;
            for (std::size_t t = 0; t < trials; ++t)
            {
                auto x = rician_samples(k_db, 1.0, n, seed * 100003ULL + t);
                est.push_back(k_factor_greenstein(std::span<const std::complex<double>>(x)).k_db);
            }
            return median_of(est);
        }
    }

    std::vector<ValidationCheck> run_synth_validate(const SynthValidateOptions &opts)
    {
        const SweepConfig &sc = opts.sweep;
        sc.validate();
        std::vector<ValidationCheck> checks;
        const double bin_s = 1.0 / (double(sc.n_points) * sc.delta_f_hz());

        // Pathloss of a noise-free single tap; the expectation always removes both antenna gains
        {
            const double g = 1e-3;
            SyntheticTapSet taps{{{30e-9, {g, 0.0}}}, 0.0, opts.seed};
            FrequencySweep s = synth_sweep(taps, sc);
            double pl = pathloss_db(apply_window(s), opts.window_correction, opts.gain_policy);
            double expected = -20.0 * std::log10(g) - sc.antenna_gain_tx_db - sc.antenna_gain_rx_db;
            checks.push_back(make_check("pathloss_round_trip", std::abs(pl - expected), 0.01, "dB",
                                        "estimated " + text::format_sig(pl, 8) + " dB, expected " + text::format_sig(expected, 8) + " dB"));
        }

        // First-tap recovery, off-bin single path at 20 dB SNR
        {
            const double tau = 37.3e-9;
            std::vector<SyntheticTap> t = {{tau, {1.0, 0.0}}};
            SyntheticTapSet taps{t, noise_sigma_for_snr(t, 20.0), opts.seed + 1};
            CirResult r = process_sweep(synth_sweep(taps, sc), opts.denoise);
            double err = std::abs(r.pdp.first_tap_abs_delay_s - tau);
            checks.push_back(make_check("first_tap_delay", err * 1e9, bin_s * 1e9, "ns",
                                        "detected " + text::format_sig(r.pdp.first_tap_abs_delay_s * 1e9, 6) + " ns, true 37.3 ns"));
        }

        // RMS delay spread of tap sets with analytic answers
        auto ds_check = [&](std::string name, std::vector<SyntheticTap> t, double snr_db, std::uint64_t seed)
        {
            SyntheticTapSet taps{t, noise_sigma_for_snr(t, snr_db), seed};
            CirResult r = process_sweep(synth_sweep(taps, sc), opts.denoise);
            double truth = tap_set_rms_delay_spread_s(t);
            double est = rms_delay_spread_s(r.pdp);
            checks.push_back(make_check(std::move(name), std::abs(est - truth) / truth, 0.02, "relative",
                                        "estimated " + text::format_sig(est * 1e9, 6) + " ns, analytic " + text::format_sig(truth * 1e9, 6) + " ns"));
        };
        ds_check("rms_ds_two_equal_taps", {{0.0, {1.0, 0.0}}, {10e-9, {1.0, 0.0}}}, 40.0, opts.seed + 2);
        ds_check("rms_ds_three_taps", {{0.0, {1.0, 0.0}}, {10e-9, {std::pow(10.0, -3.0 / 20.0), 0.0}}, {50e-9, {std::pow(10.0, -10.0 / 20.0), 0.0}}},
                 40.0, opts.seed + 3);

        // Greenstein estimator: exact-moment inversion, then Monte Carlo recovery
        {
            double worst = 0.0;
            for (double k_db : {-20.0, -5.0, 0.0, 5.0, 8.3, 15.0})
            {
                double k = std::pow(10.0, k_db / 10.0);
                double gamma = (1.0 + 2.0 * k) / ((1.0 + k) * (1.0 + k));
                worst = std::max(worst, std::abs(k_factor_from_gamma(gamma, 0).k_db - k_db));
            }
            checks.push_back(make_check("greenstein_exact_moments", worst, 1e-6, "dB", "K in {-20,-5,0,5,8.3,15} dB"));
        }
        {
            double med = greenstein_median_db(5.0, sc.n_points, opts.greenstein_trials, opts.seed);
            checks.push_back(make_check("greenstein_k5db_recovery", std::abs(med - 5.0), 1.0, "dB",
                                        "median over " + std::to_string(opts.greenstein_trials) + " trials: " + text::format_sig(med, 5) + " dB"));
        }
        {
            double worst = 0.0;
            for (std::uint64_t s = 0; s < 10; ++s)
                worst = std::max(worst, std::abs(greenstein_median_db(0.0, sc.n_points, 50, opts.seed + 1000 + s)));
            checks.push_back(make_check("greenstein_seed_spread_k0db", worst, 1.0, "dB", "worst |median - 0 dB| over 10 seeds x 50 trials"));
        }

        // Transform identities
        {
            SyntheticTapSet taps{{{12e-9, {0.7, 0.2}}, {80e-9, {0.1, -0.3}}}, 0.05, opts.seed + 4};
            FrequencySweep s = synth_sweep(taps, sc);
            ImpulseResponse ir = to_impulse_response(s);
            double e_t = 0.0, e_f = 0.0;
            for (const auto &v : ir.taps)
                e_t += std::norm(v);
            for (const auto &v : s.samples)
                e_f += std::norm(v);
            e_f /= double(s.samples.size());
            checks.push_back(make_check("parseval_1_over_n", std::abs(e_t - e_f) / e_f, 1e-9, "relative", "sum |h|^2 vs mean |H|^2"));
        }
        {
            // Noise maps to the IR tail with per-component std sigma / sqrt(N) (no window)
            const double sigma = 0.01;
            SyntheticTapSet taps{{{0.0, {0.0, 0.0}}}, sigma, opts.seed + 5};
            ImpulseResponse ir = to_impulse_response(synth_sweep(taps, sc));
            NoiseEstimate ne = estimate_noise(ir, opts.denoise);
            double expected = sigma / std::sqrt(double(sc.n_points));
            checks.push_back(make_check("noise_sigma_mapping", std::abs(ne.sigma_component - expected) / expected, 0.1, "relative",
                                        "tail sigma " + text::format_sig(ne.sigma_component, 5) + ", expected " + text::format_sig(expected, 5)));
        }

        // Model anchors for the 41 x 17 x 5 m hall
        {
            HallGeometry hall{41.0, 17.0, 5.0};
            double los = inf_delay_spread_distribution(hall, LosClass::LOS).median() * 1e9;
            double nlos = inf_delay_spread_distribution(hall, LosClass::NLOS).median() * 1e9;
            checks.push_back(make_check("inf_ds_anchor_los", std::abs(los - 26.7), 0.15, "ns", "median " + text::format_sig(los, 5) + " ns"));
            checks.push_back(make_check("inf_ds_anchor_nlos", std::abs(nlos - 30.8), 0.15, "ns", "median " + text::format_sig(nlos, 5) + " ns"));
        }
        return checks;
    }

    std::string write_validation_summary(const std::vector<ValidationCheck> &checks, const SynthValidateOptions &opts)
    {
        ojson config;
        config["command"] = "synth-validate";
        config["seed"] = opts.seed;
        config["sweep"] = {{"f_start_hz", opts.sweep.f_start_hz}, {"f_stop_hz", opts.sweep.f_stop_hz}, {"n_points", opts.sweep.n_points},
                           {"antenna_gain_tx_db", opts.sweep.antenna_gain_tx_db}, {"antenna_gain_rx_db", opts.sweep.antenna_gain_rx_db}};
        config["denoise"] = to_json(opts.denoise);
        config["gain_policy"] = std::string(to_string(opts.gain_policy));
        config["window_correction"] = opts.window_correction;
        config["greenstein_trials"] = opts.greenstein_trials;
        config["toolkit_version"] = toolkit_version();

        std::ostringstream table;
        std::string csv;
        for (const auto &l : provenance_lines(config))
            csv += "# " + l + "\n";
        csv += "check,pass,error,tolerance,units,detail\n";
        ojson arr = ojson::array();
        std::size_t failed = 0;
        for (const auto &c : checks)
        {
            table << (c.pass ? "PASS " : "FAIL ") << c.name << "  error=" << text::format_sig(c.error, 4) << " " << c.units
                  << "  tol=" << text::format_sig(c.tolerance, 4) << "  (" << c.detail << ")\n";
            csv += c.name + "," + (c.pass ? "1" : "0") + "," + text::format_double(c.error) + "," + text::format_double(c.tolerance) + "," + c.units +
                   ",\"" + c.detail + "\"\n";
            arr.push_back({{"check", c.name}, {"pass", c.pass}, {"error", c.error}, {"tolerance", c.tolerance}, {"units", c.units}, {"detail", c.detail}});
            failed += c.pass ? 0 : 1;
        }
        table << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";

        if (!opts.out_dir.empty())
        {
            ojson j = {{"config", config}, {"toolkit_version", toolkit_version()}, {"checks", arr}, {"all_passed", failed == 0}};
            text::write_file(opts.out_dir / "validation.json", j.dump(2) + "\n");
            text::write_file(opts.out_dir / "validation.csv", csv);
        }
        return table.str();
    }
}
