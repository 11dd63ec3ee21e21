// SPDX-License-Identifier: Apache-2.0
//
// uavsec - secrecy-rate optimization for a sensing UAV transmitter
// Copyright (C) 2026 The uavsec authors
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

#ifndef UAVSEC_CSV_HPP
#define UAVSEC_CSV_HPP

#include <string>
#include <type_traits>
#include <vector>

namespace uavsec
{

// Locale-independent rendering with 9 significant digits.
std::string format_number(double v);

// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string &path, const std::string &contents);

class CsvWriter
{
public:
    explicit CsvWriter(const std::vector<std::string> &header);

    template <typename... Ts>
    void row(const Ts &...cells)
    {
        bool first = true;
        ((append(cells, first)), ...);
        text_ += '\n';
    }

    const std::string &text() const { return text_; }
    void write_atomic(const std::string &path) const { write_file_atomic(path, text_); }

private:
    template <typename T>
    void append(const T &cell, bool &first)
    {
        if (!first)
            text_ += ',';
        first = false;
        if constexpr (std::is_floating_point_v<T>)
            text_ += format_number(static_cast<double>(cell));
        else if constexpr (std::is_integral_v<T>)
            text_ += std::to_string(cell);
        else
            text_ += std::string(cell);
    }

    std::string text_;
};

} // namespace uavsec

#endif
