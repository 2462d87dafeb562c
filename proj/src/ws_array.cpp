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

#include "dipsim/ws_array.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

namespace dipsim {

WsArray::WsArray(ArrayConfig config, Execution exec) : SystolicArray(config, exec) {
  weights_.assign(static_cast<std::size_t>(n()) * n(), 0);
  cur_ = blank_state();
  next_ = blank_state();
}

WsArray::State WsArray::blank_state() const {
  const auto cells = static_cast<std::size_t>(n()) * n();
  State s;
  s.in.assign(cells, Slot{});
  s.mul.assign(cells, Slot{});
  s.acc.assign(cells, Slot{});
  s.in_fifo.resize(n());
  s.out_fifo.resize(n());
  for (int k = 0; k < n(); ++k) {
    s.in_fifo[k].assign(input_fifo_depth(k), Slot{});
    s.out_fifo[k].assign(output_fifo_depth(k), Slot{});
  }
  return s;
}

int WsArray::input_fifo_depth(int r) const { return r; }
int WsArray::output_fifo_depth(int c) const { return n() - 1 - c; }

int WsArray::fifo_registers() const { return n() * (n() - 1); }

std::int64_t WsArray::weight(int r, int c) const { return weights_.at(at(r, c)); }

std::optional<std::int64_t> WsArray::input_register(int r, int c) const {
  const auto& s = cur_.in.at(at(r, c));
  if (!s.live()) return std::nullopt;
  return s.value;
}

void WsArray::corrupt_weight(int r, int c) { weights_.at(at(r, c)) ^= 1; }

void WsArray::shift_weight_row(std::span<const std::int64_t> row) {
  for (int r = n() - 1; r > 0; --r) {
    std::copy_n(weights_.begin() + at(r - 1, 0), n(), weights_.begin() + at(r, 0));
  }
  std::copy(row.begin(), row.end(), weights_.begin());
}

void WsArray::reset_datapath() {
  cur_ = blank_state();
  next_ = blank_state();
  assembling_.clear();
}

bool WsArray::in_flight() const {
  auto live = [](const std::vector<Slot>& v) {
    for (const auto& s : v) {
      if (s.live()) return true;
    }
    return false;
  };
  if (!assembling_.empty()) return true;
  if (live(cur_.in) || live(cur_.mul) || live(cur_.acc)) return true;
  for (int k = 0; k < n(); ++k) {
    if (live(cur_.in_fifo[k]) || live(cur_.out_fifo[k])) return true;
  }
  return false;
}

SystolicArray::ClockResult WsArray::clock(const std::vector<std::int64_t>* inject, int tag) {
  const int size = n();
  const bool two_stage = config().mac_stages == 2;
  const int psum_width = config().psum_width;
  int active = 0;

#pragma omp parallel for reduction(+ : active) schedule(static) if (parallel())
  for (int r = 0; r < size; ++r) {
    // Input skew FIFO for this row: depth r, entry at [0].
    const Slot entry = inject ? Slot{(*inject)[r], tag} : Slot{};
    const auto& cf = cur_.in_fifo[r];
    auto& nf = next_.in_fifo[r];
    if (r > 0) {
      nf[0] = entry;
      for (int k = 1; k < r; ++k) nf[k] = cf[k - 1];
    }
    const Slot feed = r == 0 ? entry : cf[r - 1];

    for (int c = 0; c < size; ++c) {
      const auto idx = at(r, c);
      const Slot in = cur_.in[idx];
      next_.in[idx] = c == 0 ? feed : cur_.in[at(r, c - 1)];

      if (in.live()) {
        ++active;
        ever_fired_[idx] = 1;
      }
      const Slot above = r == 0 ? Slot{0, 0} : cur_.acc[at(r - 1, c)];
      if (two_stage) {
        next_.mul[idx] = in.live() ? Slot{in.value * weights_[idx], in.tag} : Slot{};
        const Slot& product = cur_.mul[idx];
        assert(!product.live() || r == 0 || above.tag == product.tag);
        next_.acc[idx] = product.live()
                             ? Slot{wrap_to_width(above.value + product.value, psum_width), product.tag}
                             : Slot{};
      } else {
        assert(!in.live() || r == 0 || above.tag == in.tag);
        next_.acc[idx] =
            in.live() ? Slot{wrap_to_width(above.value + in.value * weights_[idx], psum_width), in.tag}
                      : Slot{};
      }
    }
  }

  // Output skew FIFOs: column c has depth n-1-c and is fed by the bottom PE.
  for (int c = 0; c + 1 < size; ++c) {
    const auto& cf = cur_.out_fifo[c];
    auto& nf = next_.out_fifo[c];
    nf[0] = cur_.acc[at(size - 1, c)];
    for (std::size_t k = 1; k < nf.size(); ++k) nf[k] = cf[k - 1];
  }

  std::swap(cur_, next_);

  // A row is emitted once every column has left its FIFO (all in the same cycle
  // when the skew is correct).
  ClockResult result;
  result.active = active;
  for (int c = 0; c < size; ++c) {
    const Slot& out = c + 1 < size ? cur_.out_fifo[c].back() : cur_.acc[at(size - 1, c)];
    if (!out.live()) continue;
    auto& pending = assembling_[out.tag];
    if (pending.values.empty()) pending.values.assign(size, 0);
    pending.values[c] = out.value;
    ++pending.filled;
  }
  for (auto it = assembling_.begin(); it != assembling_.end();) {
    if (it->second.filled == size) {
      result.emitted.emplace_back(it->first, std::move(it->second.values));
      it = assembling_.erase(it);
    } else {
      ++it;
    }
  }
  return result;
}

RunResult ws_run(const ArrayConfig& config, const Matrix& w, const Matrix& x, Execution exec) {
  return run_array(Arch::ws, config, w, x, exec);
}

long long ws_fifo_register_count(int n) {
  if (n < 2) throw std::invalid_argument("array size n must be >= 2");
  return static_cast<long long>(n) * (n - 1);
}

}  // namespace dipsim
