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

#include "dipsim/systolic_array.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dipsim/dip_array.hpp"
#include "dipsim/ws_array.hpp"

namespace dipsim {

namespace {

void check_operands(const Matrix& m, int width, const char* what) {
  for (auto v : m.elements()) {
    if (!fits_width(v, width)) {
      throw std::out_of_range(std::string(what) + " value " + std::to_string(v) + " exceeds " +
                              std::to_string(width) + "-bit operand width");
    }
  }
}

}  // namespace

SystolicArray::SystolicArray(ArrayConfig config, Execution exec)
    : config_(config), exec_(exec) {
  config_.validate();
  ever_fired_.assign(static_cast<std::size_t>(config_.n) * config_.n, 0);
}

int SystolicArray::load_weights(const Matrix& w) {
  const int size = n();
  if (w.rows() != size || w.cols() != size) {
    throw std::invalid_argument("weight tile is " + std::to_string(w.rows()) + "x" +
                                std::to_string(w.cols()) + ", array is " + std::to_string(size) +
                                "x" + std::to_string(size));
  }
  check_operands(w, config_.weight_width, "weight");
  if (in_flight()) throw std::logic_error("weights reloaded while partial sums are in flight");

  reset_datapath();
  started_ = false;
  cycle_ = 0;
  next_tag_ = 0;
  covered_ = 0;
  tfpu_ = 0;
  active_.clear();
  outputs_.clear();
  std::fill(ever_fired_.begin(), ever_fired_.end(), 0);

  // Bottom row goes in first; the final clock may also register the first input row.
  const Matrix image = stationary_image(w);
  for (int k = 0; k < size; ++k) {
    const auto row = image.row(size - 1 - k);
    if (k == size - 1 && !queue_.empty()) {
      auto first = std::move(queue_.front());
      queue_.pop_front();
      started_ = true;
      record(clock(&first, next_tag_++));
    }
    shift_weight_row(row);
  }
  weights_loaded_ = true;
  weight_load_cycles_ = size;
  return size;
}

void SystolicArray::queue_inputs(const Matrix& x) {
  if (x.cols() != n()) {
    throw std::invalid_argument("input rows have " + std::to_string(x.cols()) +
                                " columns, array is " + std::to_string(n()) + " wide");
  }
  check_operands(x, config_.input_width, "input");
  for (int r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    queue_.emplace_back(row.begin(), row.end());
  }
}

int SystolicArray::step() {
  if (!weights_loaded_) throw std::logic_error("step() before load_weights()");
  std::vector<std::int64_t> row;
  const std::vector<std::int64_t>* inject = nullptr;
  if (!queue_.empty()) {
    row = std::move(queue_.front());
    queue_.pop_front();
    inject = &row;
  }
  if (started_) {
    ++cycle_;
  } else if (inject) {
    started_ = true;
  }
  const auto result = clock(inject, inject ? next_tag_++ : -1);
  record(result);
  return result.active;
}

void SystolicArray::record(const ClockResult& result) {
  if (!started_) return;
  if (cycle_ >= 1) active_.push_back(result.active);
  for (const auto& [index, values] : result.emitted) {
    outputs_.push_back(OutputRow{cycle_, index, values});
  }
  const int all = n() * n();
  if (covered_ < all && result.active > 0) {
    covered_ = static_cast<int>(std::count(ever_fired_.begin(), ever_fired_.end(), 1));
    if (covered_ == all) tfpu_ = cycle_;
  }
}

SimTrace SystolicArray::trace() const {
  SimTrace t;
  t.weight_load_cycles = weight_load_cycles_;
  t.tfpu_measured = tfpu_;
  if (!outputs_.empty()) {
    t.first_output_cycle = outputs_.front().cycle;
    t.last_output_cycle = outputs_.back().cycle;
  }
  t.compute_cycles = t.last_output_cycle;
  t.active_pes_per_cycle.assign(
      active_.begin(),
      active_.begin() + std::min<std::ptrdiff_t>(t.compute_cycles, std::ssize(active_)));
  const int all = n() * n();
  for (std::size_t k = 0; k < t.active_pes_per_cycle.size(); ++k) {
    if (t.active_pes_per_cycle[k] == all) {
      t.first_full_cycle = static_cast<int>(k) + 1;
      break;
    }
  }
  return t;
}

std::unique_ptr<SystolicArray> make_array(Arch arch, const ArrayConfig& config, Execution exec) {
  if (arch == Arch::ws) return std::make_unique<WsArray>(config, exec);
  return std::make_unique<DipArray>(config, exec);
}

RunResult run_array(Arch arch, const ArrayConfig& config, const Matrix& w, const Matrix& x,
                    Execution exec) {
  config.validate();
  const int size = config.n;
  if (w.rows() != size || w.cols() != size) {
    throw std::invalid_argument("weight matrix must be " + std::to_string(size) + "x" +
                                std::to_string(size));
  }
  if (x.cols() != size || x.rows() % size != 0) {
    throw std::invalid_argument("input matrix must be T*" + std::to_string(size) + " x " +
                                std::to_string(size) + ", got " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()));
  }

  auto array = make_array(arch, config, exec);
  array->queue_inputs(x);
  array->load_weights(w);
  const int limit = x.rows() + 3 * size + 8;
  while (array->busy()) {
    array->step();
    if (array->cycle() > limit) throw std::logic_error("array failed to drain");
  }

  Matrix out(x.rows(), size, config.psum_width);
  std::vector<bool> seen(x.rows(), false);
  for (const auto& row : array->outputs()) {
    seen.at(row.index) = true;
    for (int c = 0; c < size; ++c) out.set(row.index, c, row.values[c]);
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
    throw std::logic_error("array dropped output rows");
  }
  return RunResult{std::move(out), array->trace()};
}

}  // namespace dipsim
