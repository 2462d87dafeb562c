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

#include "dipsim/dip_array.hpp"

#include <algorithm>

#include "dipsim/permute.hpp"

namespace dipsim {

DipArray::DipArray(ArrayConfig config, Execution exec) : SystolicArray(config, exec) {
  weights_.assign(static_cast<std::size_t>(n()) * n(), 0);
  cur_ = blank_state();
  next_ = blank_state();
}

DipArray::State DipArray::blank_state() const {
  const auto cells = static_cast<std::size_t>(n()) * n();
  State s;
  s.in.assign(cells, 0);
  s.mul.assign(cells, 0);
  s.acc.assign(cells, 0);
  s.in_tag.assign(n(), -1);
  s.mul_tag.assign(n(), -1);
  s.acc_tag.assign(n(), -1);
  return s;
}

std::int64_t DipArray::weight(int r, int c) const { return weights_.at(at(r, c)); }

std::optional<std::int64_t> DipArray::input_register(int r, int c) const {
  if (cur_.in_tag.at(r) < 0) return std::nullopt;
  return cur_.in.at(at(r, c));
}

std::optional<std::vector<std::int64_t>> DipArray::input_row(int r) const {
  if (cur_.in_tag.at(r) < 0) return std::nullopt;
  const auto first = cur_.in.begin() + static_cast<std::ptrdiff_t>(at(r, 0));
  return std::vector<std::int64_t>(first, first + n());
}

void DipArray::corrupt_weight(int r, int c) { weights_.at(at(r, c)) ^= 1; }

Matrix DipArray::stationary_image(const Matrix& w) const { return permute_weights(w); }

void DipArray::shift_weight_row(std::span<const std::int64_t> row) {
  for (int r = n() - 1; r > 0; --r) {
    std::copy_n(weights_.begin() + at(r - 1, 0), n(), weights_.begin() + at(r, 0));
  }
  std::copy(row.begin(), row.end(), weights_.begin());
}

void DipArray::reset_datapath() {
  cur_ = blank_state();
  next_ = blank_state();
}

bool DipArray::in_flight() const {
  auto live = [](const std::vector<int>& tags) {
    return std::any_of(tags.begin(), tags.end(), [](int t) { return t >= 0; });
  };
  // The bottom accumulator row is emitted on the clock that fills it.
  const bool acc_live = std::any_of(cur_.acc_tag.begin(), cur_.acc_tag.end() - 1,
                                    [](int t) { return t >= 0; });
  return live(cur_.in_tag) || live(cur_.mul_tag) || acc_live;
}

SystolicArray::ClockResult DipArray::clock(const std::vector<std::int64_t>* inject, int tag) {
  const int size = n();
  const bool two_stage = config().mac_stages == 2;
  const int psum_width = config().psum_width;
  int active = 0;

#pragma omp parallel for reduction(+ : active) schedule(static) if (parallel())
  for (int r = 0; r < size; ++r) {
    const auto base = at(r, 0);

    // Row 0 registers a whole input row; lower rows take the row above rotated left.
    if (r == 0) {
      next_.in_tag[0] = inject ? tag : -1;
      if (inject) std::copy(inject->begin(), inject->end(), next_.in.begin());
    } else {
      next_.in_tag[r] = cur_.in_tag[r - 1];
      if (cur_.in_tag[r - 1] >= 0) {
        const auto src = at(r - 1, 0);
        for (int c = 0; c < size; ++c) next_.in[base + c] = cur_.in[src + (c + 1) % size];
      }
    }

    const bool fire = cur_.in_tag[r] >= 0;
    if (fire) {
      active += size;
      std::fill_n(ever_fired_.begin() + static_cast<std::ptrdiff_t>(base), size, 1);
    }

    const int sum_tag = two_stage ? cur_.mul_tag[r] : cur_.in_tag[r];
    if (two_stage) {
      next_.mul_tag[r] = cur_.in_tag[r];
      if (fire) {
        for (int c = 0; c < size; ++c) next_.mul[base + c] = cur_.in[base + c] * weights_[base + c];
      }
    }
    next_.acc_tag[r] = sum_tag;
    if (sum_tag >= 0) {
      for (int c = 0; c < size; ++c) {
        const std::int64_t above = r == 0 ? 0 : cur_.acc[at(r - 1, c)];
        const std::int64_t product =
            two_stage ? cur_.mul[base + c] : cur_.in[base + c] * weights_[base + c];
        next_.acc[base + c] = wrap_to_width(above + product, psum_width);
      }
    }
  }

  std::swap(cur_, next_);

  ClockResult result;
  result.active = active;
  const int last = size - 1;
  if (cur_.acc_tag[last] >= 0) {
    const auto first = cur_.acc.begin() + static_cast<std::ptrdiff_t>(at(last, 0));
    result.emitted.emplace_back(cur_.acc_tag[last], std::vector<std::int64_t>(first, first + size));
  }
  return result;
}

RunResult dip_run(const ArrayConfig& config, const Matrix& w, const Matrix& x, Execution exec) {
  return run_array(Arch::dip, config, w, x, exec);
}

}  // namespace dipsim
