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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "dipsim/matrix.hpp"
#include "dipsim/report.hpp"
#include "doctest.h"

namespace {

namespace fs = std::filesystem;
using namespace dipsim;

struct Run {
  int code = -1;
  std::string out;
};

fs::path workdir() {
  const char* dir = std::getenv("DIPSIM_TEST_WORKDIR");
  return dir ? fs::path(dir) : fs::temp_directory_path();
}

Run run_cli(const std::string& args, const std::string& env = "") {
  const char* cli = std::getenv("DIPSIM_CLI");
  REQUIRE(cli != nullptr);
  static int counter = 0;
  const fs::path out = workdir() / ("test_cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      env + " \"" + std::string(cli) + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

bool same_records(const std::vector<ReportRecord>& a, const std::vector<ReportRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.command != y.command || x.arch != y.arch || x.n != y.n || x.s != y.s ||
        x.workload != y.workload || x.metric != y.metric || x.value != y.value) {
      return false;
    }
  }
  return true;
}

void check_formats_agree(const std::string& args) {
  const Run csv = run_cli(args + " --format csv");
  const Run json = run_cli(args + " --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  const auto a = read_report(csv.out, ReportFormat::csv);
  const auto b = read_report(json.out, ReportFormat::json);
  CHECK_FALSE(a.empty());
  CHECK(same_records(a, b));
}

}  // namespace

TEST_CASE("csv and json carry the same records") {
  check_formats_agree("simulate --arch dip --n 8 --s 2 --seed 3");
  check_formats_agree("analytic --sizes 3,64 --s 1");
  check_formats_agree("bench --model BERT --n 64");
  check_formats_agree("workloads --model T5");
  check_formats_agree("verify --sizes 2,4 --seeds 2");
}

TEST_CASE("output is deterministic for a fixed seed") {
  const Run a = run_cli("simulate --arch ws --n 16 --seed 42");
  const Run b = run_cli("simulate --arch ws --n 16 --seed 42");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("simulate reads operands and writes the product") {
  const fs::path w = workdir() / "test_cli_w.csv";
  const fs::path x = workdir() / "test_cli_x.csv";
  const fs::path y = workdir() / "test_cli_y.csv";
  const Matrix wm = random_matrix(4, 4, 8, 5);
  const Matrix xm = random_matrix(8, 4, 8, 6);
  write_matrix_csv(w, wm);
  write_matrix_csv(x, xm);
  for (const char* arch : {"ws", "dip"}) {
    const Run r = run_cli(std::string("simulate --arch ") + arch + " --n 4 --weights " + w.string() +
                          " --inputs " + x.string() + " --output " + y.string());
    CHECK(r.code == 0);
    CHECK(read_matrix_csv(y) == matmul_reference(xm, wm));
  }
  fs::remove(w);
  fs::remove(x);
  fs::remove(y);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("simulate --arch tpu").code == 2);
  CHECK(run_cli("simulate --n 1").code == 2);
  CHECK(run_cli("simulate --weights /no/such/file.csv").code == 2);
  CHECK(run_cli("analytic --sizes 3,x").code == 2);
  CHECK(run_cli("bench").code == 2);
  CHECK(run_cli("bench --model BERT --policy-hidden-load maybe").code == 2);
  CHECK(run_cli("verify --sizes 3 --seeds 1 --inject-fault").code == 1);
  CHECK(run_cli("verify --sizes 3 --seeds 1").code == 0);
}

TEST_CASE("power config flag and environment fallback") {
  const fs::path cfg = workdir() / "test_cli_power.json";
  {
    std::ofstream out(cfg);
    out << R"({"clock_hz": 1e9, "power_mw": {"ws": {"64": 2000}, "dip": {"64": 1000}}})";
  }
  auto summary = [](const Run& r, const std::string& metric) {
    for (const auto& rec : read_report(r.out, ReportFormat::csv)) {
      if (rec.metric == metric) return rec.value;
    }
    return -1.0;
  };
  auto max_energy = [&](const Run& r) { return summary(r, "max_energy_ratio"); };
  const Run flag = run_cli("bench --model BERT --power-config " + cfg.string());
  const Run env = run_cli("bench --model BERT", "DIPSIM_POWER_CONFIG=" + cfg.string());
  const Run none = run_cli("bench --model BERT");
  REQUIRE(flag.code == 0);
  // Twice the WS power at equal clocks doubles every energy ratio relative to latency.
  CHECK(max_energy(flag) == doctest::Approx(2.0 * summary(flag, "max_latency_ratio")));
  CHECK(max_energy(env) == max_energy(flag));
  CHECK(max_energy(none) != max_energy(flag));
  CHECK(run_cli("bench --model BERT --power-config /no/such.json").code == 2);
  fs::remove(cfg);
}

TEST_CASE("exposed weight loads lower the latency ratio") {
  auto max_latency = [](const Run& r) {
    for (const auto& rec : read_report(r.out, ReportFormat::csv)) {
      if (rec.metric == "max_latency_ratio") return rec.value;
    }
    return -1.0;
  };
  const Run on = run_cli("bench --model BERT --policy-hidden-load on");
  const Run off = run_cli("bench --model BERT --policy-hidden-load off");
  CHECK(max_latency(off) < max_latency(on));
}
