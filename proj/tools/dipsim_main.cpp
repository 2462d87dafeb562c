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

// dipsim: cycle-accurate WS / DiP systolic array simulator and workload model.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dipsim/analytic.hpp"
#include "dipsim/dip_array.hpp"
#include "dipsim/matrix.hpp"
#include "dipsim/report.hpp"
#include "dipsim/scheduler.hpp"
#include "dipsim/systolic_array.hpp"
#include "dipsim/verify.hpp"
#include "dipsim/workloads.hpp"
#include "dipsim/ws_array.hpp"

namespace {

using namespace dipsim;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " must list at least one value");
  return out;
}

bool parse_on_off(const std::string& text) {
  if (text == "on") return true;
  if (text == "off") return false;
  throw UsageError("expected on or off, got '" + text + "'");
}

struct Common {
  std::string format = "csv";
  int input_width = 8;
  int weight_width = 8;
  int psum_width = 24;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_widths(CLI::App* cmd, Common& c) {
  cmd->add_option("--input-width", c.input_width, "Input operand bits");
  cmd->add_option("--weight-width", c.weight_width, "Weight operand bits");
  cmd->add_option("--psum-width", c.psum_width, "Partial-sum register bits");
}

ArrayConfig make_config(int n, int s, const Common& c) {
  ArrayConfig cfg;
  cfg.n = n;
  cfg.mac_stages = s;
  cfg.input_width = c.input_width;
  cfg.weight_width = c.weight_width;
  cfg.psum_width = c.psum_width;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (auto warn = cfg.overflow_warning()) std::cerr << "warning: " << *warn << '\n';
  return cfg;
}

void emit(const std::vector<ReportRecord>& records, const Common& c) {
  write_report(std::cout, records, parse_format(c.format));
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::string arch = "dip";
  int n = 64;
  int s = 2;
  std::uint64_t seed = 1;
  int tiles = 1;
  std::string weights_file;
  std::string inputs_file;
  std::string output_file;
  bool parallel = false;
};

int cmd_simulate(const SimulateArgs& a) {
  const Arch arch = parse_arch(a.arch);
  const ArrayConfig cfg = make_config(a.n, a.s, a.common);
  if (a.tiles < 1) throw UsageError("--tiles must be >= 1");

  const Matrix w = a.weights_file.empty()
                       ? random_matrix(a.n, a.n, cfg.weight_width, a.seed)
                       : read_matrix_csv(std::filesystem::path(a.weights_file));
  const Matrix x = a.inputs_file.empty()
                       ? random_matrix(a.tiles * a.n, a.n, cfg.input_width, a.seed + 1)
                       : read_matrix_csv(std::filesystem::path(a.inputs_file));
  if (w.rows() != a.n || w.cols() != a.n) {
    throw UsageError("weight matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                     ", expected " + std::to_string(a.n) + "x" + std::to_string(a.n));
  }
  if (x.cols() != a.n || x.rows() % a.n != 0) {
    throw UsageError("input matrix is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                     ", expected a multiple of " + std::to_string(a.n) + " rows and " +
                     std::to_string(a.n) + " columns");
  }

  const auto run = run_array(arch, cfg, w, x, a.parallel ? Execution::parallel : Execution::serial);
  const bool match = run.output == matmul_reference(x, w);
  if (!a.output_file.empty()) write_matrix_csv(std::filesystem::path(a.output_file), run.output);

  const int t = x.rows() / a.n;
  const int expected = arch == Arch::ws ? t * a.n + 2 * a.n + a.s - 3 : t * a.n + a.n + a.s - 2;
  const std::string an(to_string(arch));
  const auto& tr = run.trace;
  std::vector<ReportRecord> out{
      {"simulate", an, a.n, a.s, "", "oracle_match", match ? 1.0 : 0.0},
      {"simulate", an, a.n, a.s, "", "tiles", static_cast<double>(t)},
      {"simulate", an, a.n, a.s, "", "weight_load_cycles", static_cast<double>(tr.weight_load_cycles)},
      {"simulate", an, a.n, a.s, "", "compute_cycles", static_cast<double>(tr.compute_cycles)},
      {"simulate", an, a.n, a.s, "", "expected_cycles", static_cast<double>(expected)},
      {"simulate", an, a.n, a.s, "", "first_output_cycle", static_cast<double>(tr.first_output_cycle)},
      {"simulate", an, a.n, a.s, "", "last_output_cycle", static_cast<double>(tr.last_output_cycle)},
      {"simulate", an, a.n, a.s, "", "tfpu", static_cast<double>(tr.tfpu_measured)},
  };
  emit(out, a.common);
  std::cerr << "verdict " << (match ? "PASS" : "FAIL") << '\n';
  return match ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- analytic

struct AnalyticArgs {
  Common common;
  std::string sizes = "3,4,8,16,32,64";
  int s = 2;
};

int cmd_analytic(const AnalyticArgs& a) {
  const auto sizes = parse_int_list(a.sizes, "--sizes");
  ArrayConfig widths = make_config(std::max(2, sizes.front()), a.s, a.common);
  for (int n : sizes) {
    if (n < 2) throw UsageError("array sizes must be >= 2");
  }
  std::vector<ReportRecord> out;
  for (const auto& r : analytic::improvement_table(sizes, a.s, widths)) {
    auto add = [&](const char* arch, const char* metric, double v) {
      out.push_back({"analytic", arch, r.n, a.s, "", metric, v});
    };
    add("ws", "latency", r.ws_latency);
    add("dip", "latency", r.dip_latency);
    add("ws", "throughput", r.ws_throughput);
    add("dip", "throughput", r.dip_throughput);
    add("ws", "registers", r.ws_registers);
    add("dip", "registers", r.dip_registers);
    add("ws", "tfpu", r.ws_tfpu);
    add("dip", "tfpu", r.dip_tfpu);
    add("", "latency_saving_pct", r.latency_saving_pct);
    add("", "throughput_improvement_pct", r.throughput_improvement_pct);
    add("", "register_saving_pct", r.register_saving_pct);
    add("", "tfpu_improvement_pct", r.tfpu_improvement_pct);
  }
  emit(out, a.common);
  return kExitOk;
}

// ---------------------------------------------------------------- bench / workloads

struct ModelArgs {
  std::string model;
  std::string presets_file;
  TransformerConfig cfg;
};

void add_model_options(CLI::App* cmd, ModelArgs& m) {
  cmd->add_option("--model", m.model, "Preset name, or 'all'");
  cmd->add_option("--presets", m.presets_file, "Preset JSON file replacing the built-in table");
  cmd->add_option("--seq-len", m.cfg.seq_len, "Sequence length l");
  cmd->add_option("--d-model", m.cfg.d_model, "Hidden size");
  cmd->add_option("--d-k", m.cfg.d_k, "Head size");
  cmd->add_option("--d-ffn", m.cfg.d_ffn, "FFN size");
  cmd->add_option("--heads", m.cfg.n_heads, "Attention heads");
}

std::vector<std::pair<std::string, TransformerConfig>> resolve_models(const ModelArgs& m) {
  const bool custom = m.cfg.seq_len || m.cfg.d_model || m.cfg.d_k || m.cfg.d_ffn || m.cfg.n_heads;
  if (!m.model.empty() && custom) throw UsageError("use either --model or explicit hyper-parameters");
  if (custom) {
    try {
      m.cfg.validate();
    } catch (const std::invalid_argument&) {
      throw UsageError("--seq-len, --d-model, --d-k, --d-ffn and --heads must all be positive");
    }
    return {{"custom", m.cfg}};
  }
  if (m.model.empty()) throw UsageError("--model or explicit hyper-parameters required");

  const auto presets = m.presets_file.empty() ? model_presets()
                                              : load_presets(std::filesystem::path(m.presets_file));
  std::vector<std::pair<std::string, TransformerConfig>> out;
  if (m.model == "all") {
    for (const auto& [name, p] : presets) out.emplace_back(name, p.config);
    return out;
  }
  for (const auto& [name, p] : presets) {
    std::string a = name;
    std::string b = m.model;
    std::transform(a.begin(), a.end(), a.begin(), ::tolower);
    std::transform(b.begin(), b.end(), b.begin(), ::tolower);
    if (a == b) return {{name, p.config}};
  }
  throw UsageError("unknown model preset '" + m.model + "'");
}

struct BenchArgs {
  Common common;
  ModelArgs model;
  int n = 64;
  int s = 2;
  std::string hidden = "on";
  std::string power_config;
  bool validate = false;
  int validate_limit = 256;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
  const auto models = resolve_models(a.model);
  const ArrayConfig cfg = make_config(a.n, a.s, a.common);
  const SchedulePolicy policy{parse_on_off(a.hidden), a.s};
  const EnergyModel energy = EnergyModel::resolve(
      a.power_config.empty() ? std::nullopt
                             : std::optional<std::filesystem::path>(a.power_config));
  energy.power_watts(Arch::ws, a.n);  // fail early on a missing entry
  energy.power_watts(Arch::dip, a.n);

  std::vector<ReportRecord> out;
  double min_lat = std::numeric_limits<double>::infinity();
  double max_lat = 0;
  double min_en = std::numeric_limits<double>::infinity();
  double max_en = 0;
  bool all_valid = true;

  for (const auto& [model_name, tcfg] : models) {
    for (const auto& job : layer_workloads(tcfg)) {
      if (job.marker) continue;
      const std::string label = model_name + "/" + job.name;
      const auto c = compare(job, a.n, policy, energy);
      auto add = [&](const char* arch, const char* metric, double v) {
        out.push_back({"bench", arch, a.n, a.s, label, metric, v});
      };
      add("", "m", job.m);
      add("", "n", job.n);
      add("", "k", job.k);
      add("", "count", job.count);
      add("", "weight_tiles", static_cast<double>(c.plan.weight_tiles()));
      add("", "input_tiles_per_weight_tile", c.plan.tm);
      add("ws", "cycles", static_cast<double>(c.ws_cycles));
      add("dip", "cycles", static_cast<double>(c.dip_cycles));
      add("ws", "energy_j", c.ws_joules);
      add("dip", "energy_j", c.dip_joules);
      add("", "latency_ratio", c.latency_ratio);
      add("", "energy_ratio", c.energy_ratio);
      min_lat = std::min(min_lat, c.latency_ratio);
      max_lat = std::max(max_lat, c.latency_ratio);
      min_en = std::min(min_en, c.energy_ratio);
      max_en = std::max(max_en, c.energy_ratio);

      if (a.validate) {
        const auto& p = c.plan;
        if (std::max({p.padded_m, p.padded_n, p.padded_k}) > a.validate_limit) {
          std::cerr << "note: " << label << " exceeds " << a.validate_limit
                    << " in some dimension; engine validation skipped\n";
          continue;
        }
        const Matrix lhs = random_matrix(job.m, job.n, cfg.input_width, a.seed);
        const Matrix rhs = random_matrix(job.n, job.k, cfg.weight_width, a.seed + 1);
        const Matrix expected = matmul_reference(lhs, rhs);
        for (Arch arch : {Arch::ws, Arch::dip}) {
          const auto run = execute_on_engines(lhs, rhs, arch, cfg, Execution::parallel);
          const long long cycles =
              run.compute_cycles + (policy.weight_load_hidden ? 0 : run.weight_load_cycles);
          const long long scheduled = arch == Arch::ws ? c.ws_cycles : c.dip_cycles;
          const bool ok = run.output == expected && cycles == scheduled;
          all_valid = all_valid && ok;
          const std::string an(to_string(arch));
          out.push_back({"bench", an, a.n, a.s, label, "engine_cycles", static_cast<double>(cycles)});
          out.push_back({"bench", an, a.n, a.s, label, "engine_agrees", ok ? 1.0 : 0.0});
        }
      }
    }
  }
  out.push_back({"bench", "", a.n, a.s, "summary", "min_latency_ratio", min_lat});
  out.push_back({"bench", "", a.n, a.s, "summary", "max_latency_ratio", max_lat});
  out.push_back({"bench", "", a.n, a.s, "summary", "min_energy_ratio", min_en});
  out.push_back({"bench", "", a.n, a.s, "summary", "max_energy_ratio", max_en});
  emit(out, a.common);
  if (!all_valid) {
    std::cerr << "engine validation FAILED\n";
    return kExitFail;
  }
  return kExitOk;
}

struct WorkloadsArgs {
  Common common;
  ModelArgs model;
};

int cmd_workloads(const WorkloadsArgs& a) {
  std::vector<ReportRecord> out;
  for (const auto& [name, tcfg] : resolve_models(a.model)) {
    for (const auto& job : layer_workloads(tcfg)) {
      const std::string label = name + "/" + job.name;
      out.push_back({"workloads", "", 0, 0, label, "m", static_cast<double>(job.m)});
      out.push_back({"workloads", "", 0, 0, label, "n", static_cast<double>(job.n)});
      out.push_back({"workloads", "", 0, 0, label, "k", static_cast<double>(job.k)});
      out.push_back({"workloads", "", 0, 0, label, "count", static_cast<double>(job.count)});
      out.push_back({"workloads", "", 0, 0, label, "macs", job.macs()});
    }
  }
  emit(out, a.common);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::string arch = "both";
  std::string sizes = "2,3,4,8,16,32,64";
  std::string stages = "1,2";
  int seeds = 20;
  std::uint64_t base_seed = 0x5eed;
  int tiles = 1;
  std::string only = "all";
  bool inject_fault = false;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  if (a.arch == "both") {
    opt.archs = {Arch::ws, Arch::dip};
  } else {
    opt.archs = {parse_arch(a.arch)};
  }
  opt.sizes = parse_int_list(a.sizes, "--sizes");
  opt.stages = parse_int_list(a.stages, "--s");
  for (int n : opt.sizes) {
    if (n < 2) throw UsageError("array sizes must be >= 2");
  }
  for (int s : opt.stages) {
    if (s != 1 && s != 2) throw UsageError("--s values must be 1 or 2");
  }
  if (a.seeds < 1 || a.tiles < 1) throw UsageError("--seeds and --tiles must be >= 1");
  opt.seeds = a.seeds;
  opt.base_seed = a.base_seed;
  opt.tiles = a.tiles;
  opt.inject_fault = a.inject_fault;
  opt.exec = a.serial ? Execution::serial : Execution::parallel;
  opt.check_output = a.only == "all" || a.only == "functional";
  opt.check_cycles = a.only == "all" || a.only == "cycles";
  opt.check_tfpu = a.only == "all" || a.only == "tfpu";

  const auto report = run_verification(opt);

  // One summary row group per (arch, n, s), in grid order.
  std::vector<ReportRecord> out;
  for (std::size_t i = 0; i < report.cases.size(); i += opt.seeds) {
    const auto& first = report.cases[i];
    const std::string an(to_string(first.arch));
    int failures = 0;
    for (int k = 0; k < opt.seeds; ++k) {
      const auto& c = report.cases[i + k];
      failures += (opt.check_output && !c.output_ok) ||
                  (opt.check_cycles && c.compute_cycles != c.expected_cycles) ||
                  (opt.check_tfpu && c.tfpu != c.expected_tfpu);
    }
    auto add = [&](const char* metric, double v) {
      out.push_back({"verify", an, first.n, first.s, "", metric, v});
    };
    if (opt.check_tfpu) {
      add("tfpu", first.tfpu);
      add("expected_tfpu", first.expected_tfpu);
    }
    if (opt.check_cycles) {
      add("compute_cycles", first.compute_cycles);
      add("expected_cycles", first.expected_cycles);
    }
    add("cases", opt.seeds);
    add("failures", failures);
  }
  emit(out, a.common);

  for (const auto& v : report.violations) std::cerr << "FAIL " << v << '\n';
  std::cerr << (report.passed() ? "PASS" : "FAIL") << ": " << report.cases.size() << " cases, "
            << report.violations.size() << " violations\n";
  return report.passed() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate WS / DiP systolic array simulator and transformer workload model"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one array on one weight tile and check the oracle");
  add_common(simulate, sim.common);
  add_widths(simulate, sim.common);
  simulate->add_option("--arch", sim.arch, "ws or dip")->check(CLI::IsMember({"ws", "dip"}));
  simulate->add_option("--n", sim.n, "Array size N");
  simulate->add_option("--s", sim.s, "MAC pipeline stages (1 or 2)");
  simulate->add_option("--seed", sim.seed, "Seed for random operands");
  simulate->add_option("--tiles", sim.tiles, "Input tiles streamed against the weights");
  simulate->add_option("--weights", sim.weights_file, "N x N weight matrix CSV")->check(CLI::ExistingFile);
  simulate->add_option("--inputs", sim.inputs_file, "T*N x N input matrix CSV")->check(CLI::ExistingFile);
  simulate->add_option("--output", sim.output_file, "Write the output matrix as CSV");
  simulate->add_flag("--parallel", sim.parallel, "Clock the PE grid on OpenMP threads");

  AnalyticArgs ana;
  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form WS vs DiP comparison table");
  add_common(analytic_cmd, ana.common);
  add_widths(analytic_cmd, ana.common);
  analytic_cmd->add_option("--sizes", ana.sizes, "Comma-separated array sizes");
  analytic_cmd->add_option("--s", ana.s, "MAC pipeline stages (1 or 2)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Tile transformer workloads onto both arrays");
  add_common(bench_cmd, bench.common);
  add_widths(bench_cmd, bench.common);
  add_model_options(bench_cmd, bench.model);
  bench_cmd->add_option("--n", bench.n, "Array size N");
  bench_cmd->add_option("--s", bench.s, "MAC pipeline stages (1 or 2)");
  bench_cmd->add_option("--policy-hidden-load", bench.hidden, "Overlap weight loads with compute")
      ->check(CLI::IsMember({"on", "off"}));
  bench_cmd->add_option("--power-config", bench.power_config, "Power table JSON (else $DIPSIM_POWER_CONFIG)");
  bench_cmd->add_flag("--validate-with-engines", bench.validate,
                      "Execute small workloads tile by tile on the simulated arrays");
  bench_cmd->add_option("--validate-limit", bench.validate_limit,
                        "Largest padded dimension executed by --validate-with-engines");
  bench_cmd->add_option("--seed", bench.seed, "Seed for validation operands");

  WorkloadsArgs wl;
  auto* workloads_cmd = app.add_subcommand("workloads", "List MHA/FFN matmul jobs");
  add_common(workloads_cmd, wl.common);
  add_model_options(workloads_cmd, wl.model);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the functional / cycle / TFPU property grid");
  add_common(verify, ver.common);
  verify->add_option("--arch", ver.arch, "ws, dip or both")->check(CLI::IsMember({"ws", "dip", "both"}));
  verify->add_option("--sizes", ver.sizes, "Comma-separated array sizes");
  verify->add_option("--s", ver.stages, "Comma-separated MAC stage counts");
  verify->add_option("--seeds", ver.seeds, "Random cases per (arch, n, s)");
  verify->add_option("--seed", ver.base_seed, "Base seed");
  verify->add_option("--tiles", ver.tiles, "Input tiles streamed per case");
  verify->add_option("--only", ver.only, "Restrict checks")
      ->check(CLI::IsMember({"all", "functional", "cycles", "tfpu"}));
  verify->add_flag("--inject-fault", ver.inject_fault, "Flip one stationary weight (negative control)");
  verify->add_flag("--serial", ver.serial, "Run cases on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*analytic_cmd) return cmd_analytic(ana);
    if (*bench_cmd) return cmd_bench(bench);
    if (*workloads_cmd) return cmd_workloads(wl);
    if (*verify) return cmd_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
