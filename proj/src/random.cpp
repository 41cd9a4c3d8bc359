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

#include "chanlsp/random.hpp"

#include <cmath>
#include <numbers>

namespace chanlsp
{
    double NormalStream::uniform_closed_open()
    {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double NormalStream::uniform_open_closed()
    {
        return double((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double NormalStream::next()
    {
        if (spare_)
        {
            double z = *spare_;
            spare_.reset();
            return z;
        }
        const double u1 = uniform_open_closed();
        const double u2 = uniform_closed_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        return r * std::cos(phi);
    }

    double normal_cdf(double x)
    {
        return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    }
}
