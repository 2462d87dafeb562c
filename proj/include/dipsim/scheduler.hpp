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

#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "dipsim/config.hpp"
#include "dipsim/matrix.hpp"
#include "dipsim/workloads.hpp"

namespace dipsim {

/// Tiling of an (m x n_dim) * (n_dim x k) product onto an array_n x array_n array.
/// Weight tiles come from the second matrix; each one stays resident while all
/// tm input tiles of its block row stream through.
struct TilePlan {
  int array_n = 0;
  int m = 0, n_dim = 0, k = 0;
  int tm = 0, tn = 0, tk = 0;
  int padded_m = 0, padded_n = 0, padded_k = 0;

  long long weight_tiles() const { return static_cast<long long>(tn) * tk; }
  int input_tiles_per_weight_tile() const { return tm; }
  bool padded() const { return padded_m != m || padded_n != n_dim || padded_k != k; }
};

TilePlan plan_tiles(int m, int n_dim, int k, int array_n);

struct SchedulePolicy {
  /// Weight tiles are double-buffered, so their N-cycle loads overlap compute.
  bool weight_load_hidden = true;
  int s = 2;
};

/// Cycles after the last input row enters until its outputs leave the array.
int drain_cycles(Arch arch, int array_n, int s);

/// Per weight tile: tm*n + drain. Adds n per weight tile when loads are not hidden.
long long schedule_cycles(const TilePlan& plan, Arch arch, const SchedulePolicy& policy);

/// Array power per architecture and size, and the clock converting cycles to seconds.
class EnergyModel {
 public:
  EnergyModel(double clock_hz, std::map<std::pair<Arch, int>, double> power_watts);

  /// Power table built into the library (data/power.json).
  static const EnergyModel& defaults();
  static EnergyModel parse(std::string_view json_text);
  static EnergyModel load(const std::filesystem::path& path);
  /// `path` if given, else $DIPSIM_POWER_CONFIG if set, else defaults().
  static EnergyModel resolve(const std::optional<std::filesystem::path>& path);

  double clock_hz() const { return clock_hz_; }
  /// Throws std::out_of_range when no entry exists for (arch, n).
  double power_watts(Arch arch, int n) const;
  const std::map<std::pair<Arch, int>, double>& table() const { return power_; }

 private:
  double clock_hz_;
  std::map<std::pair<Arch, int>, double> power_;
};

double energy_joules(long long cycles, Arch arch, int array_n, const EnergyModel& model);

struct Comparison {
  TilePlan plan;
  long long ws_cycles = 0;
  long long dip_cycles = 0;
  double ws_joules = 0;
  double dip_joules = 0;
  double latency_ratio = 0;  ///< ws_cycles / dip_cycles
  double energy_ratio = 0;   ///< ws_joules / dip_joules
};

/// Costs one instance of the job (ratios do not depend on `count`). Throws for marker rows.
Comparison compare(const WorkloadDim& workload, int array_n, const SchedulePolicy& policy,
                   const EnergyModel& model);

struct EngineExecution {
  Matrix output;
  long long compute_cycles = 0;
  long long weight_load_cycles = 0;
};

/**
 * Runs a * b tile by tile on real arrays of `arch`, accumulating psum tiles
 * on the host in 64-bit integers. With Execution::parallel the weight-tile
 * columns are spread over OpenMP threads, one array instance per tile.
 */
EngineExecution execute_on_engines(const Matrix& a, const Matrix& b, Arch arch,
                                   const ArrayConfig& config,
                                   Execution exec = Execution::serial);

}  // namespace dipsim
