// Copyright 2026 The mehh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the parsers and report writers.

#ifndef MEHH_IO_HPP
#define MEHH_IO_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mehh {

std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename so readers never see partial output.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Orders "j30_2" before "j30_10".
bool natural_less(std::string_view a, std::string_view b);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view s);

namespace csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Fields containing a comma, quote or newline are quoted RFC-4180 style.
std::string escape(std::string_view field);
std::string join(std::span<const std::string> fields);
std::vector<std::string> split_line(std::string_view line);

/// First non-empty line is the header. Throws ParseError on ragged rows.
Table parse(std::string_view text);
std::string write(const Table& table);

}  // namespace csv
}  // namespace mehh

#endif  // MEHH_IO_HPP
