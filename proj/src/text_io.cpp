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

#include "chanlsp/text_io.hpp"
#include "chanlsp/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chanlsp::text
{
    std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError("cannot open file '" + path.string() + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    void write_file(const std::filesystem::path &path, std::string_view content)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write file '" + path.string() + "'");
        out.write(content.data(), std::streamsize(content.size()));
        if (!out)
            throw std::runtime_error("write failed for '" + path.string() + "'");
    }

    std::string format_double(double value)
    {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        if (ec != std::errc())
            return "nan";
        return std::string(buf, end);
    }

    std::string format_sig(double value, int significant_digits)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
        return buf;
    }

    std::vector<std::string_view> split(std::string_view line, char separator)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            std::size_t pos = line.find(separator, start);
            if (pos == std::string_view::npos)
            {
                out.push_back(line.substr(start));
                break;
            }
            out.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        return out;
    }

    std::string_view trim(std::string_view s)
    {
        const char *ws = " \t\r\n";
        std::size_t b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        std::size_t e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    bool parse_double(std::string_view text, double &value)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        if (text.empty())
            return false;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, std::chars_format::general);
        return ec == std::errc() && ptr == text.data() + text.size();
    }

    std::vector<std::string_view> lines(std::string_view text, bool skip_comments)
    {
        std::vector<std::string_view> out;
        for (auto line : split(text, '\n'))
        {
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (trim(line).empty())
                continue;
            if (skip_comments && line.front() == '#')
                continue;
            out.push_back(line);
        }
        return out;
    }
}
