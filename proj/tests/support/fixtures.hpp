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

#ifndef chanlsp_tests_fixtures_H
#define chanlsp_tests_fixtures_H

#include "chanlsp/lsp_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace fixture
{
    // n values with sample mean mu and sample std sigma (divisor n - 1) exactly, up to rounding.
    // The shape is symmetric, so the median equals the mean.
    inline std::vector<double> with_moments(std::size_t n, double mu, double sigma)
    {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = double(i) - 0.5 * double(n - 1);
        double ss = 0.0;
        for (double v : z)
            ss += v * v;
        const double scale = sigma / std::sqrt(ss / double(n - 1));
        for (double &v : z)
            v = mu + v * scale;
        return z;
    }

    struct ClassTargets
    {
        chanlsp::LosClass los;
        std::size_t n;
        double ds_mu, ds_sigma; // ns
        double k_mu, k_sigma;   // dB
        double epl_mu, epl_sigma;
    };

    // Link table whose per-class statistics reproduce the campaign's published summaries.
    // Distances spread 3..40 m, pathloss = FSPL + EPL.
    inline std::vector<chanlsp::LargeScaleParams> campaign_tables(std::size_t n_los = 12, std::size_t n_nlos = 9)
    {
        const ClassTargets classes[] = {{chanlsp::LosClass::LOS, n_los, 22.5, 7.4, 2.0, 1.9, -1.4, 1.0},
                                        {chanlsp::LosClass::NLOS, n_nlos, 29.7, 6.9, -8.0, 8.5, 0.8, 2.6}};
        std::vector<chanlsp::LargeScaleParams> out;
        for (const auto &c : classes)
        {
            const auto ds = with_moments(c.n, c.ds_mu, c.ds_sigma);
            const auto k = with_moments(c.n, c.k_mu, c.k_sigma);
            auto epl = with_moments(c.n, c.epl_mu, c.epl_sigma);
            // Decorrelate EPL from the other columns without changing its moments
            std::reverse(epl.begin(), epl.end());
            for (std::size_t i = 0; i < c.n; ++i)
            {
                chanlsp::LargeScaleParams l;
                l.tx_id = "T" + std::to_string(i % 3);
                l.rx_id = std::string(c.los == chanlsp::LosClass::LOS ? "L" : "N") + std::to_string(i);
                l.link_id = l.tx_id + "-" + l.rx_id;
                l.los = c.los;
                l.distance_m = 3.0 + 37.0 * double(i) / double(c.n - 1);
                l.rms_ds_s = ds[i] * 1e-9;
                l.mean_delay_s = 0.8 * l.rms_ds_s;
                l.k_factor_db = k[i];
                l.k_valid = true;
                l.free_space_pl_db = chanlsp::free_space_pathloss_db(l.distance_m, 11e9);
                l.excess_pl_db = epl[i];
                l.pathloss_db = l.free_space_pl_db + epl[i];
                out.push_back(l);
            }
        }
        return out;
    }
}

#endif
