// Copyright 2026 The adroit-lg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Table emission for the command-line tool.
//
// CSV: optional '#' comment lines (resolved config, summaries), then one
// header row, then data rows. Floats use 17 significant digits so every
// double survives a write/read cycle unchanged.
//
// JSON lines: one object per line. Comment lines become {"config": {...}}
// or {"summary": {...}} objects; data rows are flat objects keyed by the
// CSV column names.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adroit/sweep.hpp"

namespace adroit {

enum class OutputFormat { Csv, Jsonl };

std::optional<OutputFormat> parse_output_format(std::string_view s);

inline constexpr std::string_view kSweepCsvHeader =
    "theta,gamma,n,c12,c23,c13_prime,lg_quantity,eps_total,verdict";

/// %.17g
std::string format_double(double v);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Writes `# key = value` lines (CSV) or one {"<kind>": {...}} object
/// (JSONL). `kind` is "config" or "summary".
void write_block(std::ostream& os, OutputFormat format, std::string_view kind,
                 const KeyValues& entries);

void write_sweep_header(std::ostream& os, OutputFormat format);
void write_sweep_record(std::ostream& os, OutputFormat format, const SweepRecord& r);

/// Reads back every data row of a sweep table; comment, config and
/// summary lines are skipped. Throws ValidationError on malformed input.
std::vector<SweepRecord> read_sweep_records(std::istream& is, OutputFormat format);

/// A generic table row for the non-sweep commands: ordered (column, value)
/// pairs with values already formatted.
using Row = std::vector<std::pair<std::string, std::string>>;

void write_rows(std::ostream& os, OutputFormat format, std::span<const Row> rows);

}  // namespace adroit
