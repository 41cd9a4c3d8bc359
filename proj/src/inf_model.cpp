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

#include "chanlsp/inf_model.hpp"
#include "chanlsp/bundled_data.hpp"
#include "chanlsp/errors.hpp"
#include "chanlsp/random.hpp"
#include "chanlsp/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanlsp
{
    void HallGeometry::validate() const
    {
        if (!(length_m > 0.0) || !(width_m > 0.0) || !(height_m > 0.0) ||
            !std::isfinite(length_m) || !std::isfinite(width_m) || !std::isfinite(height_m))
            throw InputError("hall dimensions must be positive and finite, got " + to_string());
    }

    std::string HallGeometry::to_string() const
    {
        return text::format_double(length_m) + "x" + text::format_double(width_m) + "x" + text::format_double(height_m);
    }

    HallGeometry HallGeometry::parse(std::string_view s)
    {
        auto parts = text::split(s, 'x');
        if (parts.size() != 3)
            throw InputError("hall geometry '" + std::string(s) + "': expected LxWxH in meters");
        HallGeometry h;
        if (!text::parse_double(parts[0], h.length_m) || !text::parse_double(parts[1], h.width_m) ||
            !text::parse_double(parts[2], h.height_m))
            throw InputError("hall geometry '" + std::string(s) + "': malformed number");
        h.validate();
        return h;
    }

    double LspDistribution::median() const
    {
        return kind == DistributionKind::LognormalLog10 ? std::pow(10.0, mu) : mu;
    }

    double LspDistribution::cdf(double x) const
    {
        double z;
        if (kind == DistributionKind::LognormalLog10)
        {
            if (x <= 0.0)
                return 0.0;
            z = std::log10(x) - mu;
        }
        else
            z = x - mu;

        if (sigma == 0.0)
            return z >= 0.0 ? 1.0 : 0.0;
        return normal_cdf(z / sigma);
    }

    double PathlossModel::formula_db(double d3d_m, double fc_ghz) const
    {
        return A + B * std::log10(d3d_m) + C * std::log10(fc_ghz);
    }

    const PathlossModel &InfCoefficients::variant(std::string_view name) const
    {
        for (const auto &v : variants)
            if (v.name == name)
                return v;
        throw InputError("unknown pathloss variant '" + std::string(name) + "'");
    }

    namespace
    {
        DelaySpreadCoefficients parse_ds(const nlohmann::json &j)
        {
            DelaySpreadCoefficients c;
            c.vs_scale = j.at("vs_scale").get<double>();
            c.vs_offset = j.at("vs_offset").get<double>();
            c.log10_offset = j.at("log10_offset").get<double>();
            c.sigma_lg = j.at("sigma_lg").get<double>();
            c.source = j.value("source", "");
            if (c.sigma_lg < 0.0)
                throw InputError("delay spread sigma_lg must be non-negative");
            return c;
        }
    }

    InfCoefficients InfCoefficients::from_json(const nlohmann::json &j)
    {
        InfCoefficients c;
        try
        {
            for (const auto &v : j.at("variants"))
            {
                PathlossModel m;
                m.name = v.at("name").get<std::string>();
                m.A = v.at("A").get<double>();
                m.B = v.at("B").get<double>();
                m.C = v.at("C").get<double>();
                m.shadow_sigma_db = v.at("shadow_sigma_db").get<double>();
                m.floor_variants = v.value("floor", std::vector<std::string>{});
                const auto &val = v.at("validity");
                m.validity = {val.at("d_min_m").get<double>(), val.at("d_max_m").get<double>(),
                              val.at("f_min_ghz").get<double>(), val.at("f_max_ghz").get<double>()};
                m.source = v.value("source", "");
                if (!(m.B > 0.0) || !(m.C > 0.0) || m.shadow_sigma_db < 0.0)
                    throw InputError("pathloss variant '" + m.name + "': B and C must be positive, shadow sigma non-negative");
                c.variants.push_back(std::move(m));
            }
            const auto &lsp = j.at("lsp");
            c.los_ds = parse_ds(lsp.at("inf_los_ds"));
            c.nlos_ds = parse_ds(lsp.at("inf_nlos_ds"));
            c.los_k_mu_db = lsp.at("inf_los_k").at("mu_db").get<double>();
            c.los_k_sigma_db = lsp.at("inf_los_k").at("sigma_db").get<double>();
            c.k_source = lsp.at("inf_los_k").value("source", "");
        }
        catch (const nlohmann::json::exception &e)
        {
            throw InputError(std::string("coefficient file: ") + e.what());
        }
        for (const auto &v : c.variants)
            for (const auto &f : v.floor_variants)
                c.variant(f);
        return c;
    }

    InfCoefficients InfCoefficients::load(const std::filesystem::path &path)
    {
        try
        {
            return from_json(nlohmann::json::parse(text::read_file(path)));
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw InputError(path.string() + ": " + e.what());
        }
    }

    const InfCoefficients &InfCoefficients::bundled()
    {
        static const InfCoefficients coeffs = from_json(nlohmann::json::parse(bundled::inf_coefficients_json));
        return coeffs;
    }

    LspDistribution inf_delay_spread_distribution(const HallGeometry &hall, LosClass los, double carrier_hz,
                                                  const InfCoefficients &coeffs)
    {
        hall.validate();
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("carrier frequency must be positive");
        if (los == LosClass::UNKNOWN)
            throw std::invalid_argument("InF delay spread is defined for LOS and NLOS only");

        const DelaySpreadCoefficients &c = los == LosClass::LOS ? coeffs.los_ds : coeffs.nlos_ds;
        LspDistribution d;
        d.kind = DistributionKind::LognormalLog10;
        d.mu = std::log10(c.vs_scale * hall.volume_to_surface_m() + c.vs_offset) + c.log10_offset;
        d.sigma = c.sigma_lg;
        d.units = "s";
        return d;
    }

    LspDistribution inf_k_distribution(const InfCoefficients &coeffs)
    {
        return {DistributionKind::Normal, coeffs.los_k_mu_db, coeffs.los_k_sigma_db, "dB"};
    }

    double inf_pathloss_db(const PathlossModel &model, double d3d_m, double fc_ghz, const InfCoefficients &coeffs)
    {
        const ValidityRange &r = model.validity;
        if (!(d3d_m >= r.d_min_m && d3d_m <= r.d_max_m))
            throw std::out_of_range(model.name + ": distance " + text::format_double(d3d_m) + " m outside validity range [" +
                                    text::format_double(r.d_min_m) + ", " + text::format_double(r.d_max_m) + "] m");
        if (!(fc_ghz >= r.f_min_ghz && fc_ghz <= r.f_max_ghz))
            throw std::out_of_range(model.name + ": frequency " + text::format_double(fc_ghz) + " GHz outside validity range [" +
                                    text::format_double(r.f_min_ghz) + ", " + text::format_double(r.f_max_ghz) + "] GHz");

        double pl = model.formula_db(d3d_m, fc_ghz);
        if (model.apply_floor)
            for (const auto &name : model.floor_variants)
                pl = std::max(pl, coeffs.variant(name).formula_db(d3d_m, fc_ghz));
        return pl;
    }

    std::string_view pathloss_variant_for(std::string_view nlos_variant, LosClass los)
    {
        return los == LosClass::LOS ? std::string_view("InF-LOS") : nlos_variant;
    }

    SampleSet sample(const LspDistribution &dist, std::size_t n, std::uint64_t seed)
    {
        if (n < 1)
            throw std::invalid_argument("sample count must be at least 1");
        SampleSet s;
        s.seed = seed;
        s.n = n;
        s.units = dist.units;
        s.values.reserve(n);
        NormalStream normals(seed);
        for (std::size_t i = 0; i < n; ++i)
        {
            double x = dist.mu + dist.sigma * normals.next();
            s.values.push_back(dist.kind == DistributionKind::LognormalLog10 ? std::pow(10.0, x) : x);
        }
        return s;
    }

    SampleSet sample_shadow_fading(const PathlossModel &model, std::size_t n, std::uint64_t seed)
    {
        return sample(LspDistribution{DistributionKind::Normal, 0.0, model.shadow_sigma_db, "dB"}, n, seed);
    }
}
