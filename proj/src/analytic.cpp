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

#include "dipsim/analytic.hpp"

#include <stdexcept>

namespace dipsim::analytic {

namespace {

void check(int n, int s) {
  if (n < 2) throw std::invalid_argument("array size n must be >= 2");
  if (s != 1 && s != 2) throw std::invalid_argument("MAC stages must be 1 or 2");
}

double ops(int n) { return 2.0 * n * n * n; }

}  // namespace

int ws_latency(int n, int s) {
  check(n, s);
  return 3 * n + s - 3;
}

int dip_latency(int n, int s) {
  check(n, s);
  return 2 * n + s - 2;
}

double ws_throughput(int n, int s) { return ops(n) / ws_latency(n, s); }
double dip_throughput(int n, int s) { return ops(n) / dip_latency(n, s); }

int ws_tfpu(int n) {
  check(n, 1);
  return 2 * n - 1;
}

int dip_tfpu(int n) {
  check(n, 1);
  return n;
}

double register_census(const ArrayConfig& config, Arch arch) {
  config.validate();
  const double cells = static_cast<double>(config.n) * config.n;
  const double pe_bits =
      config.input_width + config.weight_width + config.product_width() + config.psum_width;
  double units = cells * pe_bits / 8.0;
  if (arch == Arch::ws) {
    const double per_group = config.n * (config.n - 1) / 2.0;
    units += per_group * config.input_width / 8.0;
    units += per_group * config.psum_width / 8.0;
  }
  return units;
}

double register_saving_pct(const ArrayConfig& config) {
  const double ws = register_census(config, Arch::ws);
  const double dip = register_census(config, Arch::dip);
  return (ws - dip) / ws * 100.0;
}

std::vector<ImprovementRow> improvement_table(std::span<const int> sizes, int s,
                                              const ArrayConfig& widths) {
  if (sizes.empty()) throw std::invalid_argument("improvement table needs at least one size");
  std::vector<ImprovementRow> rows;
  rows.reserve(sizes.size());
  for (int n : sizes) {
    ArrayConfig cfg = widths;
    cfg.n = n;
    cfg.mac_stages = s;
    ImprovementRow row;
    row.n = n;
    row.ws_latency = ws_latency(n, s);
    row.dip_latency = dip_latency(n, s);
    row.ws_throughput = ws_throughput(n, s);
    row.dip_throughput = dip_throughput(n, s);
    row.ws_registers = register_census(cfg, Arch::ws);
    row.dip_registers = register_census(cfg, Arch::dip);
    row.ws_tfpu = ws_tfpu(n);
    row.dip_tfpu = dip_tfpu(n);
    row.latency_saving_pct =
        100.0 * (row.ws_latency - row.dip_latency) / static_cast<double>(row.ws_latency);
    row.throughput_improvement_pct = (row.dip_throughput / row.ws_throughput - 1.0) * 100.0;
    row.register_saving_pct = (row.ws_registers - row.dip_registers) / row.ws_registers * 100.0;
    row.tfpu_improvement_pct =
        100.0 * (row.ws_tfpu - row.dip_tfpu) / static_cast<double>(row.ws_tfpu);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dipsim::analytic
