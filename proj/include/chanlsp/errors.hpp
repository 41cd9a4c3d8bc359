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

#ifndef chanlsp_errors_H
#define chanlsp_errors_H

#include <stdexcept>
#include <string>

namespace chanlsp
{
    // Malformed or inconsistent input data (manifest, sweep file, LSP table, CLI values)
    class InputError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A link whose impulse response has no tap above the noise threshold
    class NoSignalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
