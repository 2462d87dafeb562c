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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dipsim {

/// One self-describing result row. Every command emits the same columns.
struct ReportRecord {
  std::string command;
  std::string arch;      ///< "ws", "dip", or "" when the metric spans both
  int n = 0;
  int s = 0;
  std::string workload;  ///< job label, preset/size tag, or ""
  std::string metric;
  double value = 0;
};

enum class ReportFormat { csv, json };

ReportFormat parse_format(std::string_view text);

/// Throws std::invalid_argument if any value is not finite.
void write_report(std::ostream& out, const std::vector<ReportRecord>& records, ReportFormat format);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

/// Inverse of write_report for either format; used to check that the two agree.
std::vector<ReportRecord> read_report(std::string_view text, ReportFormat format);

}  // namespace dipsim
