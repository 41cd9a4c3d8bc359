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

#include "chanlsp/stats_compare.hpp"
#include "chanlsp/reference.hpp"
#include "chanlsp/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chanlsp
{
    Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values))
    {
        if (sorted_.empty())
            throw std::invalid_argument("ECDF of an empty sample");
        for (double v : sorted_)
            if (!std::isfinite(v))
                throw std::invalid_argument("ECDF input contains a non-finite value");
        std::sort(sorted_.begin(), sorted_.end());
    }

    double Ecdf::operator()(double x) const
    {
        auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return double(it - sorted_.begin()) / double(sorted_.size());
    }

    double Ecdf::quantile(double p) const
    {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("quantile probability must lie in (0, 1]");
        auto rank = std::size_t(std::ceil(p * double(sorted_.size()) - 1e-12));
        rank = std::clamp<std::size_t>(rank, 1, sorted_.size());
        return sorted_[rank - 1];
    }

    std::vector<std::pair<double, double>> Ecdf::points() const
    {
        std::vector<std::pair<double, double>> pts;
        const double n = double(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i)
        {
            if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i])
                continue;
            pts.emplace_back(sorted_[i], double(i + 1) / n);
        }
        return pts;
    }

    double ks_distance(const Ecdf &a, const Ecdf &b)
    {
        // Both ECDFs are step functions jumping only at their sample values, so the supremum is
        // attained at one of the merged support points.
        const auto &xa = a.sorted_values();
        const auto &xb = b.sorted_values();
        const double na = double(xa.size()), nb = double(xb.size());
        std::size_t i = 0, j = 0;
        double sup = 0.0;
        while (i < xa.size() || j < xb.size())
        {
            double x;
            if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j]))
                x = xa[i];
            else
                x = xb[j];
            while (i < xa.size() && xa[i] <= x)
                ++i;
            while (j < xb.size() && xb[j] <= x)
                ++j;
            sup = std::max(sup, std::abs(double(i) / na - double(j) / nb));
        }
        return sup;
    }

    std::string_view parameter_name(LspParameter p)
    {
        switch (p)
        {
        case LspParameter::RmsDelaySpread:
            return "rms_ds_ns";
        case LspParameter::KFactor:
            return "k_db";
        case LspParameter::Pathloss:
            return "pl_db";
        default:
            return "epl_db";
        }
    }

    std::string_view parameter_units(LspParameter p)
    {
        return p == LspParameter::RmsDelaySpread ? "ns" : "dB";
    }

    std::optional<double> parameter_value(const LargeScaleParams &lsp, LspParameter p)
    {
        switch (p)
        {
        case LspParameter::RmsDelaySpread:
            return lsp.rms_ds_s * 1e9;
        case LspParameter::KFactor:
            if (!lsp.k_valid)
                return std::nullopt;
            return lsp.k_factor_db;
        case LspParameter::Pathloss:
            return lsp.pathloss_db;
        default:
            return lsp.excess_pl_db;
        }
    }

    namespace
    {
        // Sorting first makes the sums independent of link order
        double sorted_mean(std::vector<double> &v)
        {
            std::sort(v.begin(), v.end());
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / double(v.size());
        }

        double unbiased_std(const std::vector<double> &sorted, double mean)
        {
            double acc = 0.0;
            for (double x : sorted)
                acc += (x - mean) * (x - mean);
            return std::sqrt(acc / double(sorted.size() - 1));
        }

        std::vector<double> class_values(std::span<const LargeScaleParams> lsps, LosClass los, LspParameter p,
                                         std::size_t *excluded = nullptr)
        {
            std::vector<double> v;
            std::size_t dropped = 0;
            for (const auto &l : lsps)
            {
                if (l.los != los)
                    continue;
                if (auto x = parameter_value(l, p))
                    v.push_back(*x);
                else
                    ++dropped;
            }
            if (excluded)
                *excluded = dropped;
            return v;
        }
    }

    SummaryStats summarize(std::span<const LargeScaleParams> lsps, LosClass los, LspParameter p)
    {
        SummaryStats s;
        s.los = los;
        s.parameter = std::string(parameter_name(p));
        s.units = std::string(parameter_units(p));
        std::vector<double> v = class_values(lsps, los, p, &s.excluded);
        if (v.empty())
            throw std::invalid_argument("summarize: class " + std::string(to_string(los)) + " has no valid " + s.parameter + " values");
        if (v.size() < 2)
            throw std::invalid_argument("summarize: class " + std::string(to_string(los)) + " needs at least 2 valid " + s.parameter + " values");
        s.n = v.size();
        s.mu = sorted_mean(v);
        s.sigma = unbiased_std(v, s.mu);
        return s;
    }

    namespace
    {
        using ojson = nlohmann::ordered_json;

        double mean_of(const std::vector<double> &v)
        {
            std::vector<double> copy = v;
            return sorted_mean(copy);
        }

        ojson quantile_table(const Ecdf &e)
        {
            ojson q = ojson::object();
            for (double p : report_quantiles)
                q["p" + std::to_string(int(std::lround(p * 100)))] = e.quantile(p);
            return q;
        }

        ojson dist_params(const LspDistribution &d)
        {
            return {{"kind", d.kind == DistributionKind::LognormalLog10 ? "lognormal_log10" : "normal"},
                    {"mu", d.mu},
                    {"sigma", d.sigma},
                    {"units", d.units}};
        }

        void finish_section(ComparisonSection &s, std::vector<double> measured, std::vector<double> model)
        {
            if (measured.empty())
            {
                s.has_data = false;
                return;
            }
            s.has_data = true;
            const double measured_mean = mean_of(measured);
            const double model_mean = mean_of(model);
            s.measured.emplace(std::move(measured));
            s.model.emplace(std::move(model));
            s.ks = ks_distance(*s.measured, *s.model);
            s.mean_delta = s.model_center - measured_mean;
            s.median_delta = s.model_center - s.measured->quantile(0.5);
            s.sample_mean_delta = model_mean - measured_mean;
        }
    }

    ComparisonReport build_report(std::span<const LargeScaleParams> measured, const BenchmarkConfig &cfg,
                                  const ojson &config_echo, const InfCoefficients &coeffs)
    {
        if (measured.empty())
            throw std::invalid_argument("build_report: measured LSP table is empty");
        if (cfg.n_samples < 1)
            throw std::invalid_argument("build_report: n_samples must be at least 1");
        cfg.hall.validate();

        ComparisonReport report;
        report.config = config_echo;

        for (LosClass los : {LosClass::LOS, LosClass::NLOS})
        {
            for (LspParameter p : {LspParameter::RmsDelaySpread, LspParameter::KFactor, LspParameter::Pathloss, LspParameter::ExcessPathloss})
            {
                try
                {
                    report.summaries.push_back(summarize(measured, los, p));
                }
                catch (const std::invalid_argument &)
                {
                    report.missing_summaries.push_back(std::string(parameter_name(p)) + "/" + std::string(to_string(los)));
                }
            }
        }

        // Delay spread vs the hall-geometry lognormal model
        for (LosClass los : {LosClass::LOS, LosClass::NLOS})
        {
            ComparisonSection s;
            s.parameter = LspParameter::RmsDelaySpread;
            s.los = los;
            s.key = "rms_ds_ns/" + std::string(to_string(los)) + "/InF";
            s.model_name = "3GPP InF " + std::string(to_string(los)) + " delay spread";
            s.model_seed = cfg.seed + (los == LosClass::LOS ? 0 : 1);
            LspDistribution d = inf_delay_spread_distribution(cfg.hall, los, cfg.fc_ghz * 1e9, coeffs);
            s.model_params = dist_params(d);
            s.model_params["median_ns"] = d.median() * 1e9;
            s.model_center = d.median() * 1e9;
            SampleSet samples = sample(d, cfg.n_samples, s.model_seed);
            for (double &v : samples.values)
                v *= 1e9;
            finish_section(s, class_values(measured, los, LspParameter::RmsDelaySpread), std::move(samples.values));
            report.sections.push_back(std::move(s));
        }

        // K-factor: the InF table only defines a LOS distribution
        {
            ComparisonSection s;
            s.parameter = LspParameter::KFactor;
            s.los = LosClass::LOS;
            s.key = "k_db/LOS/InF";
            s.model_name = "3GPP InF LOS K-factor";
            s.model_seed = cfg.seed + 2;
            LspDistribution d = inf_k_distribution(coeffs);
            s.model_params = dist_params(d);
            s.model_center = d.median();
            SampleSet samples = sample(d, cfg.n_samples, s.model_seed);
            finish_section(s, class_values(measured, LosClass::LOS, LspParameter::KFactor), std::move(samples.values));
            report.sections.push_back(std::move(s));
        }

        // Pathloss: model median evaluated at every measured link distance
        std::vector<std::pair<LosClass, std::string>> pl_cases = {{LosClass::LOS, "InF-LOS"}};
        for (const auto &v : cfg.nlos_pathloss_variants)
            pl_cases.emplace_back(LosClass::NLOS, v);
        std::uint64_t pl_seed = cfg.seed + 3;
        for (const auto &[los, variant] : pl_cases)
        {
            const PathlossModel &model = coeffs.variant(variant);
            ComparisonSection s;
            s.parameter = LspParameter::Pathloss;
            s.los = los;
            s.key = "pl_db/" + std::string(to_string(los)) + "/" + variant;
            s.model_name = "3GPP " + variant;
            s.model_seed = pl_seed++;
            s.model_params = {{"A", model.A}, {"B", model.B}, {"C", model.C}, {"shadow_sigma_db", model.shadow_sigma_db},
                              {"floor", model.floor_variants}, {"fc_ghz", cfg.fc_ghz}, {"source", model.source}};

            std::vector<double> meas, medians;
            std::size_t out_of_range = 0;
            for (const auto &l : measured)
            {
                if (l.los != los)
                    continue;
                try
                {
                    medians.push_back(inf_pathloss_db(model, l.distance_m, cfg.fc_ghz, coeffs));
                    meas.push_back(l.pathloss_db);
                }
                catch (const std::out_of_range &)
                {
                    ++out_of_range;
                }
            }
            s.model_params["links_outside_validity"] = out_of_range;
            if (!medians.empty())
            {
                s.model_center = mean_of(medians);
                SampleSet sf = sample_shadow_fading(model, cfg.n_samples, s.model_seed);
                std::vector<double> shadowed(cfg.n_samples);
                for (std::size_t i = 0; i < cfg.n_samples; ++i)
                    shadowed[i] = medians[i % medians.size()] + sf.values[i];
                s.model_shadowed.emplace(std::move(shadowed));
            }
            finish_section(s, std::move(meas), std::move(medians));
            report.sections.push_back(std::move(s));
        }
        return report;
    }

    nlohmann::ordered_json ComparisonReport::to_json() const
    {
        const ReferenceValues &ref = ReferenceValues::bundled();
        ojson j;
        j["config"] = config;
        j["std_divisor"] = "n-1";
        j["quantile_rule"] = "smallest sample x with ECDF(x) >= p";

        ojson sums = ojson::array();
        for (const auto &s : summaries)
        {
            ojson o = {{"class", std::string(to_string(s.los))}, {"parameter", s.parameter}, {"units", s.units},
                       {"mu", s.mu}, {"sigma", s.sigma}, {"n", s.n}, {"excluded_invalid", s.excluded}};
            if (auto r = ref.summary(s.los, s.parameter))
                o["reference"] = {{"mu", r->first}, {"sigma", r->second}};
            sums.push_back(std::move(o));
        }
        j["summaries"] = std::move(sums);
        j["missing_summaries"] = missing_summaries;

        ojson secs = ojson::array();
        for (const auto &s : sections)
        {
            ojson o;
            o["key"] = s.key;
            o["parameter"] = std::string(parameter_name(s.parameter));
            o["class"] = std::string(to_string(s.los));
            o["model"] = s.model_name;
            o["model_params"] = s.model_params;
            o["model_seed"] = s.model_seed;
            if (!s.has_data)
            {
                o["status"] = "no data";
                secs.push_back(std::move(o));
                continue;
            }
            o["status"] = "ok";
            o["n_measured"] = s.measured->n();
            o["n_model"] = s.model->n();
            o["model_center"] = s.model_center;
            o["ks_distance"] = s.ks;
            o["mean_delta"] = s.mean_delta;
            o["median_delta"] = s.median_delta;
            o["sample_mean_delta"] = s.sample_mean_delta;
            o["quantiles"] = {{"measured", quantile_table(*s.measured)}, {"model", quantile_table(*s.model)}};
            if (s.model_shadowed)
            {
                o["shadowed_model"] = {{"n", s.model_shadowed->n()},
                                       {"ks_distance", ks_distance(*s.measured, *s.model_shadowed)},
                                       {"quantiles", quantile_table(*s.model_shadowed)}};
            }
            secs.push_back(std::move(o));
        }
        j["sections"] = std::move(secs);
        return j;
    }

    std::string ComparisonReport::to_markdown() const
    {
        const ReferenceValues &ref = ReferenceValues::bundled();
        std::ostringstream md;
        auto num = [](double v) { return text::format_sig(v, 4); };

        md << "# Measured vs 3GPP InF comparison\n\n";
        md << "## Configuration\n\n```json\n" << config.dump(2) << "\n```\n\n";
        md << "Standard deviations use the n-1 divisor. Quantiles are the smallest sample with ECDF >= p.\n\n";

        md << "## Per-class summary\n\n";
        md << "| class | parameter | units | n | mean | std | reference mean | reference std | excluded |\n";
        md << "|---|---|---|---|---|---|---|---|---|\n";
        for (const auto &s : summaries)
        {
            auto r = ref.summary(s.los, s.parameter);
            md << "| " << to_string(s.los) << " | " << s.parameter << " | " << s.units << " | " << s.n << " | " << num(s.mu)
               << " | " << num(s.sigma) << " | " << (r ? num(r->first) : "-") << " | " << (r ? num(r->second) : "-") << " | "
               << s.excluded << " |\n";
        }
        for (const auto &m : missing_summaries)
            md << "| " << m.substr(m.find('/') + 1) << " | " << m.substr(0, m.find('/')) << " | | 0 | no data | | | | |\n";
        md << "\n";

        md << "## Model comparisons\n\n";
        for (const auto &s : sections)
        {
            md << "### " << s.key << "\n\n";
            md << "Model: " << s.model_name << " (seed " << s.model_seed << ")\n\n";
            if (!s.has_data)
            {
                md << "no data\n\n";
                continue;
            }
            const std::string units(parameter_units(s.parameter));
            md << "- n measured / model: " << s.measured->n() << " / " << s.model->n() << "\n";
            md << "- model center: " << num(s.model_center) << " " << units << "\n";
            md << "- mean delta (model - measured): " << num(s.mean_delta) << " " << units << "\n";
            md << "- median delta (model - measured): " << num(s.median_delta) << " " << units << "\n";
            md << "- KS distance: " << num(s.ks) << "\n\n";
            md << "| source |";
            for (double p : report_quantiles)
                md << " p" << std::lround(p * 100) << " |";
            md << "\n|---|---|---|---|---|---|\n";
            auto row = [&](const char *name, const Ecdf &e)
            {
                md << "| " << name << " |";
                for (double p : report_quantiles)
                    md << " " << num(e.quantile(p)) << " |";
                md << "\n";
            };
            row("measured", *s.measured);
            row("model", *s.model);
            if (s.model_shadowed)
                row("model + shadowing", *s.model_shadowed);
            md << "\n";
        }
        return md.str();
    }

    std::map<std::string, std::string> ComparisonReport::cdf_csvs(const std::vector<std::string> &comment_lines) const
    {
        std::map<std::string, std::string> files;
        auto emit = [&](const std::string &name, const Ecdf &e)
        {
            std::string out;
            for (const auto &c : comment_lines)
                out += "# " + c + "\n";
            out += "value,probability\n";
            for (const auto &[x, p] : e.points())
                out += text::format_double(x) + "," + text::format_double(p) + "\n";
            files.emplace(name, std::move(out));
        };
        for (const auto &s : sections)
        {
            if (!s.has_data)
                continue;
            std::string stem = s.key;
            std::replace(stem.begin(), stem.end(), '/', '_');
            emit("cdf_" + stem + "_measured.csv", *s.measured);
            emit("cdf_" + stem + "_model.csv", *s.model);
            if (s.model_shadowed)
                emit("cdf_" + stem + "_model_shadowed.csv", *s.model_shadowed);
        }
        return files;
    }
}
