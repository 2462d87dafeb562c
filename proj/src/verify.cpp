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

#include "dipsim/verify.hpp"

#include <sstream>
#include <stdexcept>

#include "dipsim/analytic.hpp"
#include "dipsim/matrix.hpp"
#include "dipsim/systolic_array.hpp"

namespace dipsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CaseSpec {
  Arch arch;
  int n;
  int s;
  int index;
};

CaseResult run_case(const CaseSpec& spec, const VerifyOptions& opt) {
  ArrayConfig cfg;
  cfg.n = spec.n;
  cfg.mac_stages = spec.s;

  CaseResult res;
  res.arch = spec.arch;
  res.n = spec.n;
  res.s = spec.s;
  res.seed = case_seed(opt.base_seed, spec.n, spec.s, spec.index);

  const Matrix w = random_matrix(spec.n, spec.n, cfg.weight_width, res.seed);
  const Matrix x = random_matrix(opt.tiles * spec.n, spec.n, cfg.input_width, splitmix64(res.seed));

  auto array = make_array(spec.arch, cfg, Execution::serial);
  array->queue_inputs(x);
  array->load_weights(w);
  if (opt.inject_fault) array->corrupt_weight(spec.n / 2, spec.n - 1);
  while (array->busy()) array->step();

  const Matrix expected = matmul_reference(x, w);
  std::vector<bool> seen(x.rows(), false);
  for (const auto& row : array->outputs()) {
    seen[row.index] = true;
    for (int c = 0; c < spec.n && !res.first_mismatch; ++c) {
      if (row.values[c] != expected(row.index, c)) {
        res.first_mismatch = Mismatch{row.index, c, expected(row.index, c), row.values[c]};
      }
    }
  }
  for (int r = 0; r < x.rows() && !res.first_mismatch; ++r) {
    if (!seen[r]) res.first_mismatch = Mismatch{r, 0, expected(r, 0), 0};
  }
  res.output_ok = !res.first_mismatch;

  const SimTrace trace = array->trace();
  const int drain = spec.arch == Arch::ws ? 2 * spec.n + spec.s - 3 : spec.n + spec.s - 2;
  res.compute_cycles = trace.compute_cycles;
  res.expected_cycles = opt.tiles * spec.n + drain;
  res.tfpu = trace.tfpu_measured;
  res.expected_tfpu =
      spec.arch == Arch::ws ? analytic::ws_tfpu(spec.n) : analytic::dip_tfpu(spec.n);
  res.first_output_cycle = trace.first_output_cycle;
  return res;
}

std::string label(const CaseResult& r) {
  std::ostringstream os;
  os << to_string(r.arch) << " n=" << r.n << " s=" << r.s << " seed=" << r.seed;
  return os.str();
}

}  // namespace

std::uint64_t case_seed(std::uint64_t base, int n, int s, int index) {
  return splitmix64(base ^ splitmix64((static_cast<std::uint64_t>(n) << 32) |
                                      (static_cast<std::uint64_t>(s) << 24) |
                                      static_cast<std::uint64_t>(index)));
}

VerifyReport run_verification(const VerifyOptions& options) {
  std::vector<CaseSpec> specs;
  for (Arch arch : options.archs) {
    for (int n : options.sizes) {
      for (int s : options.stages) {
        for (int k = 0; k < options.seeds; ++k) specs.push_back({arch, n, s, k});
      }
    }
  }

  // Validate configs serially so nothing throws inside the parallel loop.
  for (const auto& spec : specs) {
    ArrayConfig cfg;
    cfg.n = spec.n;
    cfg.mac_stages = spec.s;
    cfg.validate();
  }
  if (options.tiles < 1) throw std::invalid_argument("tiles must be >= 1");

  VerifyReport report;
  report.cases.resize(specs.size());
  const auto count = static_cast<long long>(specs.size());
#pragma omp parallel for schedule(dynamic) if (options.exec == Execution::parallel)
  for (long long i = 0; i < count; ++i) report.cases[i] = run_case(specs[i], options);

  for (const auto& c : report.cases) {
    if (options.check_output && !c.output_ok) {
      const auto& m = *c.first_mismatch;
      std::ostringstream os;
      os << label(c) << ": output mismatch at (" << m.row << ", " << m.col << ") expected "
         << m.expected << " got " << m.actual;
      report.violations.push_back(os.str());
    }
    if (options.check_cycles && c.compute_cycles != c.expected_cycles) {
      report.violations.push_back(label(c) + ": compute cycles " +
                                  std::to_string(c.compute_cycles) + " != " +
                                  std::to_string(c.expected_cycles));
    }
    if (options.check_tfpu && c.tfpu != c.expected_tfpu) {
      report.violations.push_back(label(c) + ": TFPU " + std::to_string(c.tfpu) +
                                  " != " + std::to_string(c.expected_tfpu));
    }
  }
  return report;
}

}  // namespace dipsim
