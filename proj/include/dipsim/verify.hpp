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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dipsim/config.hpp"

namespace dipsim {

/// Property grid run by `dipsim verify` and the acceptance suite.
struct VerifyOptions {
  std::vector<Arch> archs{Arch::ws, Arch::dip};
  std::vector<int> sizes{2, 3, 4, 8, 16, 32, 64};
  std::vector<int> stages{1, 2};
  int seeds = 20;
  std::uint64_t base_seed = 0x5eed;
  int tiles = 1;  ///< input tiles streamed per case
  bool check_output = true;
  bool check_cycles = true;
  bool check_tfpu = true;
  /// Flip one stationary weight after loading; the grid must then fail.
  bool inject_fault = false;
  /// Parallel runs cases on OpenMP threads; each case still uses a serial array.
  Execution exec = Execution::parallel;
};

struct Mismatch {
  int row = 0;
  int col = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
};

struct CaseResult {
  Arch arch = Arch::ws;
  int n = 0;
  int s = 0;
  std::uint64_t seed = 0;
  bool output_ok = true;
  std::optional<Mismatch> first_mismatch;
  int compute_cycles = 0;
  int expected_cycles = 0;
  int tfpu = 0;
  int expected_tfpu = 0;
  int first_output_cycle = 0;
};

struct VerifyReport {
  std::vector<CaseResult> cases;       ///< grid order: arch, size, stages, seed
  std::vector<std::string> violations;  ///< empty when everything passed
  bool passed() const { return violations.empty(); }
};

/// Seed of the matrices used for grid case (n, s, index); both architectures see the same data.
std::uint64_t case_seed(std::uint64_t base, int n, int s, int index);

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace dipsim
