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

#include "dipsim/scheduler.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dipsim/systolic_array.hpp"
#include "json.hpp"

namespace dipsim {

namespace embedded {
extern const std::string_view kPowerJson;
}

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

TilePlan plan_tiles(int m, int n_dim, int k, int array_n) {
  if (m < 1 || n_dim < 1 || k < 1) throw std::invalid_argument("matmul dimensions must be positive");
  if (array_n < 2) throw std::invalid_argument("array size must be >= 2");
  TilePlan p;
  p.array_n = array_n;
  p.m = m;
  p.n_dim = n_dim;
  p.k = k;
  p.tm = ceil_div(m, array_n);
  p.tn = ceil_div(n_dim, array_n);
  p.tk = ceil_div(k, array_n);
  p.padded_m = p.tm * array_n;
  p.padded_n = p.tn * array_n;
  p.padded_k = p.tk * array_n;
  return p;
}

int drain_cycles(Arch arch, int array_n, int s) {
  if (s != 1 && s != 2) throw std::invalid_argument("MAC stages must be 1 or 2");
  return arch == Arch::ws ? 2 * array_n + s - 3 : array_n + s - 2;
}

long long schedule_cycles(const TilePlan& plan, Arch arch, const SchedulePolicy& policy) {
  const long long n = plan.array_n;
  const long long per_tile = plan.tm * n + drain_cycles(arch, plan.array_n, policy.s);
  long long total = plan.weight_tiles() * per_tile;
  if (!policy.weight_load_hidden) total += plan.weight_tiles() * n;
  return total;
}

EnergyModel::EnergyModel(double clock_hz, std::map<std::pair<Arch, int>, double> power_watts)
    : clock_hz_(clock_hz), power_(std::move(power_watts)) {
  if (!(clock_hz_ > 0)) throw std::invalid_argument("clock frequency must be positive");
  for (const auto& [key, watts] : power_) {
    if (!(watts > 0)) {
      throw std::invalid_argument("power for " + std::string(to_string(key.first)) + " " +
                                  std::to_string(key.second) + " must be positive");
    }
  }
}

EnergyModel EnergyModel::parse(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::map<std::pair<Arch, int>, double> power;
  for (const auto& [arch_name, sizes] : doc.at("power_mw").items()) {
    const Arch arch = parse_arch(arch_name);
    for (const auto& [size, mw] : sizes.items()) {
      power[{arch, std::stoi(size)}] = mw.get<double>() / 1000.0;
    }
  }
  return EnergyModel(doc.at("clock_hz").get<double>(), std::move(power));
}

EnergyModel EnergyModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open power config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const EnergyModel& EnergyModel::defaults() {
  static const EnergyModel model = parse(embedded::kPowerJson);
  return model;
}

EnergyModel EnergyModel::resolve(const std::optional<std::filesystem::path>& path) {
  if (path) return load(*path);
  if (const char* env = std::getenv("DIPSIM_POWER_CONFIG"); env && *env) return load(env);
  return defaults();
}

double EnergyModel::power_watts(Arch arch, int n) const {
  const auto it = power_.find({arch, n});
  if (it == power_.end()) {
    throw std::out_of_range("no power entry for " + std::string(to_string(arch)) + " " +
                            std::to_string(n) + "x" + std::to_string(n));
  }
  return it->second;
}

double energy_joules(long long cycles, Arch arch, int array_n, const EnergyModel& model) {
  const double watts = model.power_watts(arch, array_n);
  return static_cast<double>(cycles) / model.clock_hz() * watts;
}

Comparison compare(const WorkloadDim& workload, int array_n, const SchedulePolicy& policy,
                   const EnergyModel& model) {
  if (workload.marker) {
    throw std::invalid_argument("'" + workload.name + "' is not a matmul job");
  }
  Comparison c;
  c.plan = plan_tiles(workload.m, workload.n, workload.k, array_n);
  c.ws_cycles = schedule_cycles(c.plan, Arch::ws, policy);
  c.dip_cycles = schedule_cycles(c.plan, Arch::dip, policy);
  c.ws_joules = energy_joules(c.ws_cycles, Arch::ws, array_n, model);
  c.dip_joules = energy_joules(c.dip_cycles, Arch::dip, array_n, model);
  c.latency_ratio = static_cast<double>(c.ws_cycles) / static_cast<double>(c.dip_cycles);
  c.energy_ratio = c.ws_joules / c.dip_joules;
  return c;
}

EngineExecution execute_on_engines(const Matrix& a, const Matrix& b, Arch arch,
                                   const ArrayConfig& config, Execution exec) {
  config.validate();
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul dimension mismatch");
  // Reject bad operands up front: nothing may throw inside the parallel region.
  for (auto v : a.elements()) {
    if (!fits_width(v, config.input_width)) throw std::out_of_range("input exceeds operand width");
  }
  for (auto v : b.elements()) {
    if (!fits_width(v, config.weight_width)) throw std::out_of_range("weight exceeds operand width");
  }
  const int n = config.n;
  const TilePlan plan = plan_tiles(a.rows(), a.cols(), b.cols(), n);

  std::vector<std::int64_t> acc(static_cast<std::size_t>(plan.padded_m) * plan.padded_k, 0);
  long long compute = 0;
  long long loads = 0;

  // Each weight-tile column owns a disjoint block of output columns.
#pragma omp parallel for reduction(+ : compute, loads) schedule(dynamic) \
    if (exec == Execution::parallel)
  for (int jk = 0; jk < plan.tk; ++jk) {
    for (int jn = 0; jn < plan.tn; ++jn) {
      const Matrix w = b.block(jn * n, jk * n, n, n);
      const Matrix x = a.block(0, jn * n, plan.padded_m, n);
      const RunResult run = run_array(arch, config, w, x, Execution::serial);
      compute += run.trace.compute_cycles;
      loads += run.trace.weight_load_cycles;
      for (int r = 0; r < plan.padded_m; ++r) {
        auto* dst = acc.data() + static_cast<std::size_t>(r) * plan.padded_k + jk * n;
        for (int c = 0; c < n; ++c) dst[c] += run.output(r, c);
      }
    }
  }

  Matrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) {
      out.set(r, c, acc[static_cast<std::size_t>(r) * plan.padded_k + c]);
    }
  }
  return EngineExecution{std::move(out), compute, loads};
}

}  // namespace dipsim
