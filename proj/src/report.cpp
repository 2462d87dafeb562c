/*
 * Copyright 2026 The dipsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dipsim/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dipsim {

namespace {

constexpr std::string_view kHeader = "command,arch,n,s,workload,metric,value";

// Labels are generated by the tool; quoting keeps arbitrary preset names safe.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

ReportFormat parse_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_report(std::ostream& out, const std::vector<ReportRecord>& records, ReportFormat format) {
  for (const auto& r : records) {
    if (!std::isfinite(r.value)) {
      throw std::invalid_argument("non-finite value for metric '" + r.metric + "'");
    }
  }
  if (format == ReportFormat::csv) {
    out << kHeader << '\n';
    for (const auto& r : records) {
      out << csv_field(r.command) << ',' << csv_field(r.arch) << ',' << r.n << ',' << r.s << ','
          << csv_field(r.workload) << ',' << csv_field(r.metric) << ',' << format_number(r.value)
          << '\n';
    }
    return;
  }
  auto rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"command", r.command},
                    {"arch", r.arch},
                    {"n", r.n},
                    {"s", r.s},
                    {"workload", r.workload},
                    {"metric", r.metric},
                    {"value", r.value}});
  }
  out << rows.dump(2) << '\n';
}

std::vector<ReportRecord> read_report(std::string_view text, ReportFormat format) {
  std::vector<ReportRecord> records;
  if (format == ReportFormat::json) {
    for (const auto& j : nlohmann::json::parse(text)) {
      records.push_back({j.at("command").get<std::string>(), j.at("arch").get<std::string>(),
                         j.at("n").get<int>(), j.at("s").get<int>(),
                         j.at("workload").get<std::string>(), j.at("metric").get<std::string>(),
                         j.at("value").get<double>()});
    }
    return records;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw std::invalid_argument("missing CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw std::invalid_argument("malformed report line: " + line);
    records.push_back({f[0], f[1], std::stoi(f[2]), std::stoi(f[3]), f[4], f[5], std::stod(f[6])});
  }
  return records;
}

}  // namespace dipsim
