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

#ifndef chanlsp_campaign_io_H
#define chanlsp_campaign_io_H

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace chanlsp
{
    // VNA sweep grid and the antenna gains that apply to every link of a campaign.
    // Defaults are the 10-12 GHz, 2001-point campaign setup (1 MHz spacing, 3.2 dBi antennas).
    struct SweepConfig
    {
        double f_start_hz = 10.0e9;
        double f_stop_hz = 12.0e9;
        std::size_t n_points = 2001;
        double antenna_gain_tx_db = 3.2;
        double antenna_gain_rx_db = 3.2;

        double delta_f_hz() const { return (f_stop_hz - f_start_hz) / double(n_points - 1); }
        double center_hz() const { return 0.5 * (f_start_hz + f_stop_hz); }
        double frequency_hz(std::size_t k) const { return f_start_hz + double(k) * delta_f_hz(); }

        // Throws InputError if the grid is degenerate
        void validate() const;

        bool operator==(const SweepConfig &) const = default;
    };

    enum class LosClass
    {
        LOS,
        NLOS,
        UNKNOWN
    };

    std::string_view to_string(LosClass los);
    LosClass parse_los_class(std::string_view text); // Throws InputError

    struct Position
    {
        double x_m = 0.0;
        double y_m = 0.0;
        std::optional<double> z_m; // Antenna height, absent for 2D layouts

        bool operator==(const Position &) const = default;
    };

    struct Node
    {
        std::string id;
        Position position;

        bool operator==(const Node &) const = default;
    };

    struct Link
    {
        std::string id; // Defaults to "<tx>-<rx>" when the manifest omits it
        std::string tx_id;
        std::string rx_id;
        LosClass los = LosClass::UNKNOWN;
        std::string sweep_file; // Relative to the manifest directory unless absolute

        bool operator==(const Link &) const = default;
    };

    // Node ids share one namespace across TX and RX nodes.
    struct CampaignLayout
    {
        SweepConfig config;
        std::vector<Node> tx_nodes;
        std::vector<Node> rx_nodes;
        std::vector<Link> links;
        std::filesystem::path base_dir; // Directory that sweep_file entries are resolved against

        const Node &node(std::string_view id) const; // Throws InputError for unknown ids
        const Link &link(std::string_view link_id) const;
        std::filesystem::path sweep_path(const Link &link) const;

        // Checks referential integrity, id uniqueness, dimensionality and non-zero link distances
        void validate() const;

        bool operator==(const CampaignLayout &other) const
        {
            return config == other.config && tx_nodes == other.tx_nodes && rx_nodes == other.rx_nodes && links == other.links;
        }
    };

    // Complex S21 samples (linear, dimensionless) on the config grid, ascending frequency
    struct FrequencySweep
    {
        SweepConfig config;
        std::vector<std::complex<double>> samples;
        std::string link_id;
    };

    double distance(const Position &a, const Position &b);

    // Distance of the link between two nodes; endpoint order does not matter. Throws InputError for unknown links.
    double link_distance(const CampaignLayout &layout, std::string_view tx_id, std::string_view rx_id);

    CampaignLayout parse_campaign(const nlohmann::json &manifest, const std::filesystem::path &base_dir);
    CampaignLayout load_campaign(const std::filesystem::path &manifest_path);
    nlohmann::ordered_json campaign_to_json(const CampaignLayout &layout);
    void save_campaign(const CampaignLayout &layout, const std::filesystem::path &manifest_path);

    // CSV with header "freq_hz,re,im" and exactly config.n_points rows
    FrequencySweep parse_sweep(std::string_view text, const SweepConfig &config, std::string link_id = {});
    FrequencySweep load_sweep(const std::filesystem::path &path, const SweepConfig &config, std::string link_id = {});
    void write_sweep(const std::filesystem::path &path, const FrequencySweep &sweep);
}

#endif
