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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dipsim/matrix.hpp"

namespace dipsim {

enum class Arch { ws, dip };

std::string_view to_string(Arch arch);
/// Accepts "ws"/"dip" (case-insensitive); throws std::invalid_argument otherwise.
Arch parse_arch(std::string_view text);

/// How an engine evaluates the PE grid each clock. Both produce identical state.
enum class Execution { serial, parallel };

/**
 * Geometry and datapath widths shared by both arrays and the closed-form models.
 *
 * `mac_stages` is the MAC pipeline depth: 1 commits multiply and add in the
 * same cycle, 2 registers the product first.
 */
struct ArrayConfig {
  int n = 64;
  int mac_stages = 2;
  int input_width = 8;
  int weight_width = 8;
  int psum_width = 24;

  int product_width() const { return input_width + weight_width; }

  /// Throws std::invalid_argument for n < 2, S outside {1, 2}, or bad widths.
  void validate() const;

  /// Non-empty when psum_width cannot hold a full N-term column sum.
  std::optional<std::string> overflow_warning() const;
};

/// Per-run cycle accounting. Compute cycles are numbered from 1 at the first
/// clock in which a PE consumes input data.
struct SimTrace {
  int weight_load_cycles = 0;
  int compute_cycles = 0;
  int first_output_cycle = 0;
  int last_output_cycle = 0;
  /// Entry k is the number of PEs whose multiplier fired in compute cycle k+1.
  std::vector<int> active_pes_per_cycle;
  /// First cycle by which every PE has performed at least one MAC.
  int tfpu_measured = 0;
  /// First cycle in which all N^2 PEs fire together, if that ever happens.
  std::optional<int> first_full_cycle;
};

struct RunResult {
  Matrix output;
  SimTrace trace;
};

}  // namespace dipsim
