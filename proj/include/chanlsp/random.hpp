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

#ifndef chanlsp_random_H
#define chanlsp_random_H

#include <cstdint>
#include <optional>
#include <random>

namespace chanlsp
{
    // Seeded standard-normal stream with a fixed algorithm, so sample sets are reproducible
    // across platforms and standard libraries:
    //   - engine: std::mt19937_64 (output sequence fixed by the C++ standard)
    //   - uniforms: top 53 bits scaled by 2^-53; u1 in (0, 1], u2 in [0, 1)
    //   - normals: Box-Muller, z0 = sqrt(-2 ln u1) cos(2 pi u2), then z1 = sqrt(-2 ln u1) sin(2 pi u2)
    class NormalStream
    {
    public:
        explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

        double next();
        double uniform_open_closed(); // (0, 1]
        double uniform_closed_open(); // [0, 1)

    private:
        std::mt19937_64 engine_;
        std::optional<double> spare_;
    };

    // Standard normal CDF
    double normal_cdf(double x);
}

#endif
