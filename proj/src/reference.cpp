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

#include "chanlsp/reference.hpp"
#include "chanlsp/bundled_data.hpp"
#include "chanlsp/errors.hpp"

namespace chanlsp
{
    const ReferenceValues &ReferenceValues::bundled()
    {
        static const ReferenceValues ref(nlohmann::json::parse(bundled::reference_values_json));
        return ref;
    }

    std::optional<std::pair<double, double>> ReferenceValues::summary(LosClass los, std::string_view parameter) const
    {
        const auto &s = data_.at("summary");
        auto cls = std::string(to_string(los));
        if (!s.contains(cls) || !s.at(cls).contains(std::string(parameter)))
            return std::nullopt;
        const auto &p = s.at(cls).at(std::string(parameter));
        return std::make_pair(p.at("mu").get<double>(), p.at("sigma").get<double>());
    }

    std::optional<std::pair<double, double>> ReferenceValues::range(std::string_view parameter) const
    {
        const auto &r = data_.at("ranges");
        if (!r.contains(std::string(parameter)))
            return std::nullopt;
        const auto &v = r.at(std::string(parameter));
        return std::make_pair(v.at(0).get<double>(), v.at(1).get<double>());
    }

    double ReferenceValues::anchor(std::string_view name) const
    {
        const auto &a = data_.at("model_anchors");
        if (!a.contains(std::string(name)))
            throw InputError("unknown reference anchor '" + std::string(name) + "'");
        return a.at(std::string(name)).get<double>();
    }
}
