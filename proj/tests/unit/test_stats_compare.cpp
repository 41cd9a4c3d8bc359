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

#include <catch2/catch_amalgamated.hpp>

#include "chanlsp/inf_model.hpp"
#include "chanlsp/random.hpp"
#include "chanlsp/reference.hpp"
#include "chanlsp/stats_compare.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace chanlsp;
using Catch::Approx;

namespace
{
    const ComparisonSection &section(const ComparisonReport &r, std::string_view key)
    {
        for (const auto &s : r.sections)
            if (s.key == key)
                return s;
        FAIL("missing section " << key);
        throw std::logic_error("unreachable");
    }

    std::vector<double> random_values(oracle::Gen &gen, std::size_t n, double lo, double hi, bool ties)
    {
        std::vector<double> v(n);
        for (auto &x : v)
            x = ties ? std::round(gen.uniform(lo, hi)) : gen.uniform(lo, hi);
        return v;
    }
}

TEST_CASE("Empirical CDF", "[stats_compare]")
{
    Ecdf e({3.0, 1.0, 2.0});
    REQUIRE(e(2.0) == Approx(2.0 / 3.0));
    REQUIRE(e(0.999) == 0.0);
    REQUIRE(e(3.0) == 1.0);
    REQUIRE(e(100.0) == 1.0);
    REQUIRE(e.n() == 3);
    REQUIRE(e.sorted_values() == std::vector<double>{1.0, 2.0, 3.0});
    REQUIRE(e.quantile(0.5) == 2.0);
    REQUIRE(e.quantile(1.0 / 3.0) == 1.0);
    REQUIRE(e.quantile(1.0) == 3.0);

    Ecdf ties({1.0, 1.0, 2.0, 5.0});
    auto pts = ties.points();
    REQUIRE(pts.size() == 3);
    REQUIRE(pts[0] == std::pair{1.0, 0.5});
    REQUIRE(pts[2] == std::pair{5.0, 1.0});

    REQUIRE_THROWS_AS(Ecdf(std::vector<double>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(Ecdf({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    REQUIRE_THROWS_AS(Ecdf({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST_CASE("ECDF properties", "[stats_compare][property]")
{
    oracle::Gen gen(12);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto v = random_values(gen, gen.index(1, 60), -10.0, 10.0, trial % 2 == 0);
        Ecdf e(v);
        // Agrees with a brute-force count at every sample and between samples
        double prev = 0.0;
        for (double x = -11.0; x <= 11.0; x += 0.25)
        {
            const double f = e(x);
            REQUIRE(f == Approx(oracle::ecdf_at(v, x)).margin(1e-15));
            REQUIRE(f >= prev);
            REQUIRE(f >= 0.0);
            REQUIRE(f <= 1.0);
            prev = f;
        }
        for (double x : v)
            REQUIRE(e(x) == Approx(oracle::ecdf_at(v, x)).margin(1e-15));
        // Step heights are multiples of 1/n and add up to one
        double total = 0.0, last = 0.0;
        for (auto [x, f] : e.points())
        {
            const double h = (f - last) * double(v.size());
            REQUIRE(h == Approx(std::round(h)).margin(1e-9));
            REQUIRE(std::round(h) >= 1.0);
            total += f - last;
            last = f;
        }
        REQUIRE(total == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("ECDF against the analytic normal CDF", "[stats_compare]")
{
    auto k = inf_k_distribution();
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        Ecdf e(sample(k, 10000, seed).values);
        double sup = 0.0;
        const auto &s = e.sorted_values();
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            const double f = k.cdf(s[i]);
            sup = std::max({sup, std::abs(double(i + 1) / double(s.size()) - f), std::abs(double(i) / double(s.size()) - f)});
        }
        REQUIRE(sup < 0.02);
    }
}

TEST_CASE("KS distance", "[stats_compare]")
{
    Ecdf a({1.0, 2.0, 3.0});
    REQUIRE(ks_distance(a, a) == 0.0);
    REQUIRE(ks_distance(Ecdf({0.0, 0.5, 1.0}), Ecdf({10.0, 10.5, 11.0})) == 1.0);
    REQUIRE(ks_distance(Ecdf({1.0, 2.0}), Ecdf({2.0, 3.0})) == 0.5);

    auto k = inf_k_distribution();
    REQUIRE(ks_distance(Ecdf(sample(k, 10000, 1).values), Ecdf(sample(k, 10000, 2).values)) < 0.03);

    oracle::Gen gen(99);
    for (int trial = 0; trial < 100; ++trial)
    {
        const bool ties = trial % 3 == 0;
        auto x = random_values(gen, gen.index(1, 40), 0.0, 10.0, ties);
        auto y = random_values(gen, gen.index(1, 40), gen.uniform(-3, 3), 12.0, ties);
        auto z = random_values(gen, gen.index(1, 40), 2.0, gen.uniform(4, 15), ties);
        const Ecdf ex(x), ey(y), ez(z);
        const double dxy = ks_distance(ex, ey);
        REQUIRE(dxy == Approx(oracle::ks_brute(x, y)).margin(1e-15));
        REQUIRE(dxy == ks_distance(ey, ex));
        REQUIRE(dxy >= 0.0);
        REQUIRE(dxy <= 1.0);
        REQUIRE(dxy <= ks_distance(ex, ez) + ks_distance(ez, ey) + 1e-15);
    }
}

TEST_CASE("Per-class summaries", "[stats_compare]")
{
    const auto table = fixture::campaign_tables();
    const auto &ref = ReferenceValues::bundled();

    SECTION("fixtures reproduce the published tables")
    {
        for (LosClass los : {LosClass::LOS, LosClass::NLOS})
            for (LspParameter p : {LspParameter::RmsDelaySpread, LspParameter::KFactor, LspParameter::ExcessPathloss})
            {
                auto published = ref.summary(los, parameter_name(p));
                REQUIRE(published);
                auto s = summarize(table, los, p);
                REQUIRE(s.mu == Approx(published->first).margin(1e-12));
                REQUIRE(s.sigma == Approx(published->second).margin(1e-12));
                REQUIRE(std::round(s.mu * 10.0) / 10.0 == published->first);
                REQUIRE(std::round(s.sigma * 10.0) / 10.0 == published->second);
                REQUIRE(s.units == parameter_units(p));
                REQUIRE(s.excluded == 0);
            }
        REQUIRE(summarize(table, LosClass::NLOS, LspParameter::KFactor).mu == Approx(-8.0).margin(1e-12));
        REQUIRE(summarize(table, LosClass::NLOS, LspParameter::KFactor).sigma == Approx(8.5).margin(1e-12));
    }

    SECTION("invalid K values are excluded and counted")
    {
        auto t = table;
        t.push_back(t.front());
        t.back().k_valid = false;
        t.back().k_factor_db = -30.0;
        auto s = summarize(t, LosClass::LOS, LspParameter::KFactor);
        REQUIRE(s.excluded == 1);
        REQUIRE(s.n == 12);
        REQUIRE(s.mu == Approx(2.0).margin(1e-12));
        REQUIRE(summarize(t, LosClass::LOS, LspParameter::RmsDelaySpread).n == 13);
    }

    SECTION("two identical values")
    {
        std::vector<LargeScaleParams> t(2);
        t[0].los = t[1].los = LosClass::LOS;
        t[0].rms_ds_s = t[1].rms_ds_s = 20e-9;
        REQUIRE(summarize(t, LosClass::LOS, LspParameter::RmsDelaySpread).sigma == 0.0);
        REQUIRE_THROWS_AS(summarize(t, LosClass::NLOS, LspParameter::RmsDelaySpread), std::invalid_argument);
        REQUIRE_THROWS_AS(summarize(std::span(t).first(1), LosClass::LOS, LspParameter::RmsDelaySpread), std::invalid_argument);
    }

    SECTION("permutation invariance")
    {
        std::mt19937 rng(4);
        auto t = table;
        for (LspParameter p : {LspParameter::RmsDelaySpread, LspParameter::KFactor, LspParameter::Pathloss, LspParameter::ExcessPathloss})
        {
            const auto base = summarize(table, LosClass::NLOS, p);
            for (int i = 0; i < 100; ++i)
            {
                std::shuffle(t.begin(), t.end(), rng);
                const auto s = summarize(t, LosClass::NLOS, p);
                REQUIRE(s.mu == base.mu);
                REQUIRE(s.sigma == base.sigma);
            }
        }
    }
}

TEST_CASE("Comparison report", "[stats_compare]")
{
    const auto table = fixture::campaign_tables();
    BenchmarkConfig cfg;
    const nlohmann::ordered_json echo = {{"hall", cfg.hall.to_string()}};
    const auto report = build_report(table, cfg, echo);

    SECTION("sections and deltas")
    {
        const auto &ds = section(report, "rms_ds_ns/LOS/InF");
        REQUIRE(ds.has_data);
        REQUIRE(ds.mean_delta == Approx(26.7571165 - 22.5).margin(1e-6));
        REQUIRE(ds.mean_delta == Approx(4.2).margin(0.15));
        REQUIRE(ds.model->n() == 10000);
        REQUIRE(ds.model_seed == 1);
        REQUIRE(section(report, "rms_ds_ns/NLOS/InF").model_seed == 2);

        const auto &k = section(report, "k_db/LOS/InF");
        REQUIRE(k.median_delta == 7.0 - k.measured->quantile(0.5));
        REQUIRE(k.median_delta == Approx(5.0).margin(0.5));
        REQUIRE(k.model_seed == 3);

        for (const char *key : {"pl_db/LOS/InF-LOS", "pl_db/NLOS/InF-SL", "pl_db/NLOS/InF-DL"})
        {
            const auto &pl = section(report, key);
            REQUIRE(pl.has_data);
            REQUIRE(pl.model_shadowed);
            REQUIRE(pl.model->n() == (pl.los == LosClass::LOS ? 12u : 9u));
        }
        // Per-link medians: the model set is the model evaluated at each measured distance
        const auto &dl = section(report, "pl_db/NLOS/InF-DL");
        const auto &model = InfCoefficients::bundled().variant("InF-DL");
        std::vector<double> expect;
        for (const auto &l : table)
            if (l.los == LosClass::NLOS)
                expect.push_back(inf_pathloss_db(model, l.distance_m, 11.0));
        std::sort(expect.begin(), expect.end());
        REQUIRE(dl.model->sorted_values() == expect);
        REQUIRE(report.summaries.size() == 8);
        REQUIRE(report.missing_summaries.empty());
    }

    SECTION("recomputable from stored inputs")
    {
        for (const auto &s : report.sections)
        {
            REQUIRE(s.ks == ks_distance(*s.measured, *s.model));
            REQUIRE(s.median_delta == s.model_center - s.measured->quantile(0.5));
        }
        auto j = report.to_json();
        REQUIRE(j["std_divisor"] == "n-1");
        REQUIRE(j["config"]["hall"] == "41x17x5");
    }

    SECTION("empty NLOS class marks sections as no data")
    {
        std::vector<LargeScaleParams> los_only;
        for (const auto &l : table)
            if (l.los == LosClass::LOS)
                los_only.push_back(l);
        auto r = build_report(los_only, cfg, echo);
        REQUIRE_FALSE(section(r, "rms_ds_ns/NLOS/InF").has_data);
        REQUIRE_FALSE(section(r, "pl_db/NLOS/InF-DL").has_data);
        REQUIRE(section(r, "rms_ds_ns/LOS/InF").has_data);
        auto j = r.to_json();
        int no_data = 0;
        for (const auto &s : j["sections"])
            no_data += s["status"] == "no data";
        REQUIRE(no_data == 3);
        REQUIRE(r.missing_summaries.size() == 4);
        REQUIRE(r.to_markdown().find("no data") != std::string::npos);
    }

    SECTION("byte-identical output for identical inputs")
    {
        auto again = build_report(table, cfg, echo);
        REQUIRE(again.to_json().dump(2) == report.to_json().dump(2));
        REQUIRE(again.to_markdown() == report.to_markdown());
        REQUIRE(again.cdf_csvs({"x"}) == report.cdf_csvs({"x"}));
        BenchmarkConfig other = cfg;
        other.seed = 2;
        REQUIRE(build_report(table, other, echo).to_json().dump(2) != report.to_json().dump(2));
    }

    SECTION("CDF point lists")
    {
        auto csvs = report.cdf_csvs({"chanlsp test"});
        REQUIRE_FALSE(csvs.empty());
        for (const auto &[name, body] : csvs)
        {
            REQUIRE(name.ends_with(".csv"));
            REQUIRE(body.find("value,probability") != std::string::npos);
            REQUIRE(body.starts_with("# "));
        }
    }

    SECTION("a single model sample still produces a report")
    {
        BenchmarkConfig one = cfg;
        one.n_samples = 1;
        auto r = build_report(table, one, echo);
        REQUIRE(section(r, "k_db/LOS/InF").model->n() == 1);
        REQUIRE_THROWS_AS(build_report(std::span<const LargeScaleParams>{}, cfg, echo), std::invalid_argument);
    }
}
