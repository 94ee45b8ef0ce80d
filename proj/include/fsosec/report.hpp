/*
   Copyright 2026 The fsosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "fsosec/scenario.hpp"
#include "fsosec/sweep.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fsosec {

/// A number (NaN when not computed) or free text.
using Cell = std::variant<double, std::string>;

/// The data behind every CSV and JSON output: metadata pairs, named columns
/// and rows of cells.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

Table sweep_table(const SweepSpec& spec, const CurveResult& curve);
Table validation_table(const ValidationReport& report);

/// "# key: value" metadata lines, a header row, then one line per row.
/// Numbers use 17 significant digits; missing numbers are written as nan.
std::string to_csv(const Table& t);

/// {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]},
/// with missing numbers as null.
std::string to_json(const Table& t);

/// Inverse of to_csv. Cells that parse completely as numbers become numbers.
Table parse_csv(std::string_view text);

std::string format_double(double v);
std::string hex_hash(std::uint64_t h);

std::string channel_report_text(const LinkScenario& s, const ChannelReport& r);
std::string channel_report_json(const LinkScenario& s, const ChannelReport& r);

/// Human summary: header with the seed, one line per check, the worst offender.
std::string validation_summary(const ValidationReport& report);

} // namespace fsosec
