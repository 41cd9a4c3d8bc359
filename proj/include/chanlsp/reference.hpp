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

#ifndef chanlsp_reference_H
#define chanlsp_reference_H

#include "chanlsp/campaign_io.hpp"

#include <optional>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace chanlsp
{
    // Published per-class summaries, observed ranges and model anchors of the 10-12 GHz
    // indoor-factory campaign, bundled from data/reference_values.json
    class ReferenceValues
    {
    public:
        explicit ReferenceValues(nlohmann::json data) : data_(std::move(data)) {}

        static const ReferenceValues &bundled();

        // (mu, sigma) for a class and parameter key such as "rms_ds_ns"; nullopt when not published
        std::optional<std::pair<double, double>> summary(LosClass los, std::string_view parameter) const;

        // Observed [min, max] for a parameter key; nullopt when not published
        std::optional<std::pair<double, double>> range(std::string_view parameter) const;

        double anchor(std::string_view name) const; // Throws InputError for unknown anchors

        const nlohmann::json &raw() const { return data_; }

    private:
        nlohmann::json data_;
    };
}

#endif
