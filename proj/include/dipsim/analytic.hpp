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

#include <span>
#include <vector>

#include "dipsim/config.hpp"

namespace dipsim::analytic {

// Single-tile cycle counts, weight preload excluded. n >= 2, s in {1, 2}.
int ws_latency(int n, int s);
int dip_latency(int n, int s);

// Operations per cycle, counting a MAC as two operations: 2n^3 / latency.
double ws_throughput(int n, int s);
double dip_throughput(int n, int s);

// Cycles until every PE has started computing.
int ws_tfpu(int n);
int dip_tfpu(int n);

/// Register storage in 8-bit units: per-PE input, weight, product and psum
/// registers, plus (WS only) the input FIFO entries at input width and the
/// output FIFO entries at psum width.
double register_census(const ArrayConfig& config, Arch arch);

/// Percentage of WS register units that DiP does not need.
double register_saving_pct(const ArrayConfig& config);

struct ImprovementRow {
  int n = 0;
  int ws_latency = 0;
  int dip_latency = 0;
  double ws_throughput = 0;
  double dip_throughput = 0;
  double ws_registers = 0;
  double dip_registers = 0;
  int ws_tfpu = 0;
  int dip_tfpu = 0;
  double latency_saving_pct = 0;
  double throughput_improvement_pct = 0;
  double register_saving_pct = 0;
  double tfpu_improvement_pct = 0;
};

/// One row per size. Widths come from `widths`; its n and mac_stages are ignored.
std::vector<ImprovementRow> improvement_table(std::span<const int> sizes, int s,
                                              const ArrayConfig& widths = {});

}  // namespace dipsim::analytic
