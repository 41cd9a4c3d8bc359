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

#include "chanlsp/campaign_io.hpp"
#include "chanlsp/errors.hpp"
#include "chanlsp/text_io.hpp"

#include <cmath>
#include <set>

namespace chanlsp
{
    using nlohmann::json;

    void SweepConfig::validate() const
    {
        if (!std::isfinite(f_start_hz) || !std::isfinite(f_stop_hz))
            throw InputError("sweep_config: frequencies must be finite");
        if (n_points < 2)
            throw InputError("sweep_config.n_points: must be at least 2, got " + std::to_string(n_points));
        if (!(f_stop_hz > f_start_hz))
            throw InputError("sweep_config.f_stop_hz: must exceed f_start_hz");
        if (!(delta_f_hz() > 0.0))
            throw InputError("sweep_config: grid spacing is not positive");
        if (!std::isfinite(antenna_gain_tx_db) || !std::isfinite(antenna_gain_rx_db))
            throw InputError("sweep_config: antenna gains must be finite");
    }

    std::string_view to_string(LosClass los)
    {
        switch (los)
        {
        case LosClass::LOS:
            return "LOS";
        case LosClass::NLOS:
            return "NLOS";
        default:
            return "UNKNOWN";
        }
    }

    LosClass parse_los_class(std::string_view text)
    {
        if (text == "LOS")
            return LosClass::LOS;
        if (text == "NLOS")
            return LosClass::NLOS;
        if (text == "UNKNOWN")
            return LosClass::UNKNOWN;
        throw InputError("invalid LOS class '" + std::string(text) + "', expected LOS, NLOS or UNKNOWN");
    }

    const Node &CampaignLayout::node(std::string_view id) const
    {
        for (const auto &n : tx_nodes)
            if (n.id == id)
                return n;
        for (const auto &n : rx_nodes)
            if (n.id == id)
                return n;
        throw InputError("unknown node id '" + std::string(id) + "'");
    }

    const Link &CampaignLayout::link(std::string_view link_id) const
    {
        for (const auto &l : links)
            if (l.id == link_id)
                return l;
        throw InputError("unknown link id '" + std::string(link_id) + "'");
    }

    std::filesystem::path CampaignLayout::sweep_path(const Link &link) const
    {
        std::filesystem::path p(link.sweep_file);
        return p.is_absolute() ? p : base_dir / p;
    }

    void CampaignLayout::validate() const
    {
        config.validate();

        std::set<std::string, std::less<>> node_ids;
        std::set<std::string, std::less<>> tx_ids, rx_ids;
        std::optional<bool> three_d;
        auto check_node = [&](const Node &n, const char *group, std::set<std::string, std::less<>> &ids)
        {
            if (n.id.empty())
                throw InputError(std::string(group) + ": node with empty id");
            if (!node_ids.insert(n.id).second)
                throw InputError(std::string(group) + ": duplicate node id '" + n.id + "'");
            ids.insert(n.id);
            const Position &p = n.position;
            if (!std::isfinite(p.x_m) || !std::isfinite(p.y_m) || (p.z_m && !std::isfinite(*p.z_m)))
                throw InputError(std::string(group) + ": non-finite coordinate for node '" + n.id + "'");
            bool has_z = p.z_m.has_value();
            if (three_d && *three_d != has_z)
                throw InputError(std::string(group) + ": node '" + n.id + "' mixes 2D and 3D positions within one campaign");
            three_d = has_z;
        };
        for (const auto &n : tx_nodes)
            check_node(n, "tx_nodes", tx_ids);
        for (const auto &n : rx_nodes)
            check_node(n, "rx_nodes", rx_ids);

        std::set<std::string, std::less<>> link_ids;
        for (const auto &l : links)
        {
            if (!tx_ids.contains(l.tx_id))
                throw InputError("links: link '" + l.id + "' references undeclared tx id '" + l.tx_id + "'");
            if (!rx_ids.contains(l.rx_id))
                throw InputError("links: link '" + l.id + "' references undeclared rx id '" + l.rx_id + "'");
            if (!link_ids.insert(l.id).second)
                throw InputError("links: duplicate link id '" + l.id + "'");
            if (l.sweep_file.empty())
                throw InputError("links: link '" + l.id + "' has no sweep file");
            if (!(distance(node(l.tx_id).position, node(l.rx_id).position) > 0.0))
                throw InputError("links: zero link distance for link '" + l.id + "'");
        }
    }

    double distance(const Position &a, const Position &b)
    {
        double dx = a.x_m - b.x_m;
        double dy = a.y_m - b.y_m;
        double dz = (a.z_m && b.z_m) ? *a.z_m - *b.z_m : 0.0;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    double link_distance(const CampaignLayout &layout, std::string_view tx_id, std::string_view rx_id)
    {
        for (const auto &l : layout.links)
        {
            if ((l.tx_id == tx_id && l.rx_id == rx_id) || (l.tx_id == rx_id && l.rx_id == tx_id))
                return distance(layout.node(l.tx_id).position, layout.node(l.rx_id).position);
        }
        throw InputError("unknown link between '" + std::string(tx_id) + "' and '" + std::string(rx_id) + "'");
    }

    namespace
    {
        const json &require(const json &obj, const char *key, const std::string &where)
        {
            if (!obj.is_object() || !obj.contains(key))
                throw InputError(where + ": missing key '" + key + "'");
            return obj.at(key);
        }

        double require_number(const json &obj, const char *key, const std::string &where)
        {
            const json &v = require(obj, key, where);
            if (!v.is_number())
                throw InputError(where + "." + key + ": expected a number");
            return v.get<double>();
        }

        std::string require_string(const json &obj, const char *key, const std::string &where)
        {
            const json &v = require(obj, key, where);
            if (!v.is_string())
                throw InputError(where + "." + key + ": expected a string");
            return v.get<std::string>();
        }

        std::string id_of(const json &v, const std::string &where)
        {
            if (v.is_string())
                return v.get<std::string>();
            if (v.is_number_integer())
                return std::to_string(v.get<long long>());
            throw InputError(where + ": id must be a string or integer");
        }

        std::vector<Node> parse_nodes(const json &manifest, const char *key)
        {
            const json &arr = require(manifest, key, "manifest");
            if (!arr.is_array())
                throw InputError(std::string(key) + ": expected an array");
            std::vector<Node> nodes;
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                std::string where = std::string(key) + "[" + std::to_string(i) + "]";
                const json &n = arr[i];
                Node node;
                node.id = id_of(require(n, "id", where), where + ".id");
                node.position.x_m = require_number(n, "x_m", where);
                node.position.y_m = require_number(n, "y_m", where);
                if (n.contains("z_m") && !n.at("z_m").is_null())
                    node.position.z_m = require_number(n, "z_m", where);
                nodes.push_back(std::move(node));
            }
            return nodes;
        }
    }

    CampaignLayout parse_campaign(const json &manifest, const std::filesystem::path &base_dir)
    {
        if (!manifest.is_object())
            throw InputError("manifest: expected a JSON object");

        CampaignLayout layout;
        layout.base_dir = base_dir;

        const json &sc = require(manifest, "sweep_config", "manifest");
        layout.config.f_start_hz = require_number(sc, "f_start_hz", "sweep_config");
        layout.config.f_stop_hz = require_number(sc, "f_stop_hz", "sweep_config");
        const json &np = require(sc, "n_points", "sweep_config");
        if (!np.is_number_integer() || np.get<long long>() < 2)
            throw InputError("sweep_config.n_points: expected an integer >= 2");
        layout.config.n_points = np.get<std::size_t>();
        layout.config.antenna_gain_tx_db = require_number(sc, "antenna_gain_tx_db", "sweep_config");
        layout.config.antenna_gain_rx_db = require_number(sc, "antenna_gain_rx_db", "sweep_config");

        layout.tx_nodes = parse_nodes(manifest, "tx_nodes");
        layout.rx_nodes = parse_nodes(manifest, "rx_nodes");

        const json &links = require(manifest, "links", "manifest");
        if (!links.is_array())
            throw InputError("links: expected an array");
        for (std::size_t i = 0; i < links.size(); ++i)
        {
            std::string where = "links[" + std::to_string(i) + "]";
            const json &l = links[i];
            Link link;
            link.tx_id = id_of(require(l, "tx", where), where + ".tx");
            link.rx_id = id_of(require(l, "rx", where), where + ".rx");
            link.los = parse_los_class(require_string(l, "los", where));
            link.sweep_file = require_string(l, "sweep", where);
            link.id = l.contains("id") ? id_of(l.at("id"), where + ".id") : link.tx_id + "-" + link.rx_id;
            layout.links.push_back(std::move(link));
        }

        layout.validate();
        return layout;
    }

    CampaignLayout load_campaign(const std::filesystem::path &manifest_path)
    {
        std::string text = text::read_file(manifest_path);
        json manifest;
        try
        {
            manifest = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw InputError("manifest '" + manifest_path.string() + "': " + e.what());
        }
        return parse_campaign(manifest, manifest_path.parent_path());
    }

    nlohmann::ordered_json campaign_to_json(const CampaignLayout &layout)
    {
        using ojson = nlohmann::ordered_json;
        ojson out;
        out["sweep_config"] = {{"f_start_hz", layout.config.f_start_hz},
                               {"f_stop_hz", layout.config.f_stop_hz},
                               {"n_points", layout.config.n_points},
                               {"antenna_gain_tx_db", layout.config.antenna_gain_tx_db},
                               {"antenna_gain_rx_db", layout.config.antenna_gain_rx_db}};
        auto nodes = [](const std::vector<Node> &list)
        {
            ojson arr = ojson::array();
            for (const auto &n : list)
            {
                ojson o = {{"id", n.id}, {"x_m", n.position.x_m}, {"y_m", n.position.y_m}};
                if (n.position.z_m)
                    o["z_m"] = *n.position.z_m;
                arr.push_back(std::move(o));
            }
            return arr;
        };
        out["tx_nodes"] = nodes(layout.tx_nodes);
        out["rx_nodes"] = nodes(layout.rx_nodes);
        ojson links = ojson::array();
        for (const auto &l : layout.links)
            links.push_back({{"id", l.id}, {"tx", l.tx_id}, {"rx", l.rx_id}, {"los", std::string(to_string(l.los))}, {"sweep", l.sweep_file}});
        out["links"] = std::move(links);
        return out;
    }

    void save_campaign(const CampaignLayout &layout, const std::filesystem::path &manifest_path)
    {
        text::write_file(manifest_path, campaign_to_json(layout).dump(2) + "\n");
    }

    FrequencySweep parse_sweep(std::string_view content, const SweepConfig &config, std::string link_id)
    {
        config.validate();
        auto rows = text::lines(content, true);
        if (rows.empty())
            throw InputError("sweep file is empty");

        auto header = text::split(rows.front(), ',');
        if (header.size() != 3 || text::trim(header[0]) != "freq_hz" || text::trim(header[1]) != "re" || text::trim(header[2]) != "im")
            throw InputError("sweep file: expected header 'freq_hz,re,im'");

        std::size_t n_rows = rows.size() - 1;
        if (n_rows != config.n_points)
            throw InputError("sweep file: length mismatch, " + std::to_string(n_rows) + " data rows for a " +
                             std::to_string(config.n_points) + "-point config");

        FrequencySweep sweep;
        sweep.config = config;
        sweep.link_id = std::move(link_id);
        sweep.samples.reserve(n_rows);

        double prev_f = -INFINITY;
        for (std::size_t k = 0; k < n_rows; ++k)
        {
            auto cols = text::split(rows[k + 1], ',');
            std::string where = "sweep file row " + std::to_string(k) + ": ";
            if (cols.size() != 3)
                throw InputError(where + "expected 3 columns");
            double f, re, im;
            if (!text::parse_double(cols[0], f) || !text::parse_double(cols[1], re) || !text::parse_double(cols[2], im))
                throw InputError(where + "malformed number");
            if (!std::isfinite(f) || !std::isfinite(re) || !std::isfinite(im))
                throw InputError(where + "non-finite sample at row index " + std::to_string(k));
            if (!(f > prev_f))
                throw InputError(where + "non-monotone frequency column");
            prev_f = f;
            double expected = config.frequency_hz(k);
            if (std::abs(f - expected) > 1e-6 * std::abs(expected))
                throw InputError(where + "frequency " + text::format_double(f) + " Hz is off the configured grid (expected " +
                                 text::format_double(expected) + " Hz)");
            sweep.samples.emplace_back(re, im);
        }
        return sweep;
    }

    FrequencySweep load_sweep(const std::filesystem::path &path, const SweepConfig &config, std::string link_id)
    {
        try
        {
            return parse_sweep(text::read_file(path), config, std::move(link_id));
        }
        catch (const InputError &e)
        {
            throw InputError(path.string() + ": " + e.what());
        }
    }

    void write_sweep(const std::filesystem::path &path, const FrequencySweep &sweep)
    {
        std::string out = "freq_hz,re,im\n";
        out.reserve(sweep.samples.size() * 64);
        for (std::size_t k = 0; k < sweep.samples.size(); ++k)
        {
            out += text::format_double(sweep.config.frequency_hz(k));
            out += ',';
            out += text::format_double(sweep.samples[k].real());
            out += ',';
            out += text::format_double(sweep.samples[k].imag());
            out += '\n';
        }
        text::write_file(path, out);
    }
}
