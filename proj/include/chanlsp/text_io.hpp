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

#ifndef chanlsp_text_io_H
#define chanlsp_text_io_H

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chanlsp::text
{
    std::string read_file(const std::filesystem::path &path); // Throws InputError when unreadable
    void write_file(const std::filesystem::path &path, std::string_view content);

    // Shortest decimal text that round-trips to the same double
    std::string format_double(double value);

    // Fixed number of significant digits, used for human-facing tables
    std::string format_sig(double value, int significant_digits);

    std::vector<std::string_view> split(std::string_view line, char separator);
    std::string_view trim(std::string_view s);

    // Accepts decimal and exponent notation, plus "nan"/"inf" spellings. Returns false on malformed text.
    bool parse_double(std::string_view text, double &value);

    // Splits into lines, dropping '\r' and blank lines. Lines starting with '#' are dropped when skip_comments is set.
    std::vector<std::string_view> lines(std::string_view text, bool skip_comments);
}

#endif
