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

#include "adroit/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace adroit {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double to_double(std::string_view s, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("table line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::optional<double> maybe_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Verdict to_verdict(std::string_view s, int line) {
  const auto v = parse_verdict(s);
  if (!v) throw ValidationError("table line " + std::to_string(line) + ": bad verdict '" + std::string(s) + "'");
  return *v;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "jsonl") return OutputFormat::Jsonl;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_block(std::ostream& os, OutputFormat format, std::string_view kind,
                 const KeyValues& entries) {
  if (format == OutputFormat::Csv) {
    for (const auto& [key, value] : entries) os << "# " << key << " = " << value << '\n';
    return;
  }
  json body = json::object();
  for (const auto& [key, value] : entries) body[key] = value;
  os << json{{std::string(kind), body}}.dump() << '\n';
}

void write_sweep_header(std::ostream& os, OutputFormat format) {
  if (format == OutputFormat::Csv) os << kSweepCsvHeader << '\n';
}

void write_sweep_record(std::ostream& os, OutputFormat format, const SweepRecord& r) {
  if (format == OutputFormat::Csv) {
    os << format_double(r.theta) << ',' << format_double(r.gamma) << ',' << r.n << ','
       << format_double(r.c12) << ',' << format_double(r.c23) << ',' << format_double(r.c13_prime)
       << ',' << format_double(r.lg_quantity) << ',' << format_double(r.eps_total) << ','
       << to_string(r.verdict) << '\n';
    return;
  }
  json j = json::object();
  j["theta"] = r.theta;
  j["gamma"] = r.gamma;
  j["n"] = r.n;
  j["c12"] = r.c12;
  j["c23"] = r.c23;
  j["c13_prime"] = r.c13_prime;
  j["lg_quantity"] = r.lg_quantity;
  j["eps_total"] = r.eps_total;
  j["verdict"] = std::string(to_string(r.verdict));
  os << j.dump() << '\n';
}

std::vector<SweepRecord> read_sweep_records(std::istream& is, OutputFormat format) {
  std::vector<SweepRecord> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (format == OutputFormat::Csv) {
      if (line.front() == '#') continue;
      if (!header_seen) {
        if (line != kSweepCsvHeader) {
          throw ValidationError("table line " + std::to_string(line_no) + ": unexpected header");
        }
        header_seen = true;
        continue;
      }
      const auto f = split(line, ',');
      if (f.size() != 9) {
        throw ValidationError("table line " + std::to_string(line_no) + ": expected 9 fields");
      }
      SweepRecord r;
      r.theta = to_double(f[0], line_no);
      r.gamma = to_double(f[1], line_no);
      r.n = static_cast<int>(to_double(f[2], line_no));
      r.c12 = to_double(f[3], line_no);
      r.c23 = to_double(f[4], line_no);
      r.c13_prime = to_double(f[5], line_no);
      r.lg_quantity = to_double(f[6], line_no);
      r.eps_total = to_double(f[7], line_no);
      r.verdict = to_verdict(f[8], line_no);
      out.push_back(r);
    } else {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw ValidationError("table line " + std::to_string(line_no) + ": " + e.what());
      }
      if (j.contains("config") || j.contains("summary")) continue;
      try {
        SweepRecord r;
        r.theta = j.at("theta").get<double>();
        r.gamma = j.at("gamma").get<double>();
        r.n = j.at("n").get<int>();
        r.c12 = j.at("c12").get<double>();
        r.c23 = j.at("c23").get<double>();
        r.c13_prime = j.at("c13_prime").get<double>();
        r.lg_quantity = j.at("lg_quantity").get<double>();
        r.eps_total = j.at("eps_total").get<double>();
        r.verdict = to_verdict(j.at("verdict").get<std::string>(), line_no);
        out.push_back(r);
      } catch (const json::exception& e) {
        throw ValidationError("table line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return out;
}

void write_rows(std::ostream& os, OutputFormat format, std::span<const Row> rows) {
  if (rows.empty()) return;
  if (format == OutputFormat::Csv) {
    const Row& first = rows.front();
    for (std::size_t i = 0; i < first.size(); ++i) os << (i ? "," : "") << first[i].first;
    os << '\n';
    for (const Row& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].second;
      os << '\n';
    }
    return;
  }
  for (const Row& row : rows) {
    json j = json::object();
    for (const auto& [key, value] : row) {
      std::uint64_t whole = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), whole);
      if (value.empty()) {
        j[key] = nullptr;
      } else if (ec == std::errc() && ptr == value.data() + value.size()) {
        j[key] = whole;
      } else if (const auto num = maybe_number(value); num && std::isfinite(*num)) {
        j[key] = *num;
      } else {
        j[key] = value;
      }
    }
    os << j.dump() << '\n';
  }
}

}  // namespace adroit
