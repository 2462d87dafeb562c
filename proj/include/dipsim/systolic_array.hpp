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

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dipsim/config.hpp"
#include "dipsim/matrix.hpp"

namespace dipsim {

/// One finished output row as it leaves the array.
struct OutputRow {
  int cycle = 0;  ///< compute cycle in which the row became available
  int index = 0;  ///< input row it belongs to, counted from the last weight load
  std::vector<std::int64_t> values;
};

/**
 * Clocked N x N weight-stationary array.
 *
 * Usage: queue_inputs(), load_weights(), then step() until !busy(). When input
 * rows are queued before load_weights(), the first one enters on the final
 * weight-load clock, which becomes compute cycle 0. Otherwise the first step()
 * that injects a row is cycle 0.
 *
 * Instances are single-threaded; with Execution::parallel one clock is spread
 * over OpenMP threads by PE row.
 */
class SystolicArray {
 public:
  SystolicArray(const SystolicArray&) = delete;
  SystolicArray& operator=(const SystolicArray&) = delete;
  virtual ~SystolicArray() = default;

  virtual Arch arch() const = 0;
  const ArrayConfig& config() const { return config_; }
  Execution execution() const { return exec_; }

  /// Shifts `w` in row by row over N clocks and returns N. Requires an empty pipeline.
  int load_weights(const Matrix& w);

  /// Appends the rows of `x` (x.cols() == n) to the injection queue.
  void queue_inputs(const Matrix& x);

  /// Advances one clock; returns how many PEs fired their multiplier.
  int step();

  bool weights_loaded() const { return weights_loaded_; }
  /// Inputs still queued or partial sums still travelling.
  bool busy() const { return !queue_.empty() || in_flight(); }
  /// Compute cycle of the most recent clock (0 until the first injection).
  int cycle() const { return cycle_; }

  const std::vector<OutputRow>& outputs() const { return outputs_; }
  SimTrace trace() const;

  /// Stationary weight register of PE(r, c).
  virtual std::int64_t weight(int r, int c) const = 0;
  /// Input register of PE(r, c), empty when it holds no live operand.
  virtual std::optional<std::int64_t> input_register(int r, int c) const = 0;
  /// Every register in the array, FIFOs included.
  int storage_registers() const { return 4 * config_.n * config_.n + fifo_registers(); }
  virtual int fifo_registers() const = 0;

  /// Test hook: flips the low bit of one stationary weight.
  virtual void corrupt_weight(int r, int c) = 0;

 protected:
  SystolicArray(ArrayConfig config, Execution exec);

  struct ClockResult {
    int active = 0;
    std::vector<std::pair<int, std::vector<std::int64_t>>> emitted;  // (row index, values)
  };

  /// Image actually shifted into the weight registers.
  virtual Matrix stationary_image(const Matrix& w) const = 0;
  /// Vertical weight shift: `row` enters PE row 0, every other row moves down.
  virtual void shift_weight_row(std::span<const std::int64_t> row) = 0;
  /// One datapath clock. `inject` is the next input row, tagged `tag`, or null.
  virtual ClockResult clock(const std::vector<std::int64_t>* inject, int tag) = 0;
  virtual bool in_flight() const = 0;
  virtual void reset_datapath() = 0;

  int n() const { return config_.n; }
  bool parallel() const { return exec_ == Execution::parallel; }

  /// PEs that have fired at least once since the last weight load, indexed r * n + c.
  std::vector<unsigned char> ever_fired_;

 private:
  void record(const ClockResult& result);

  ArrayConfig config_;
  Execution exec_;
  bool weights_loaded_ = false;
  bool started_ = false;
  int cycle_ = 0;
  int next_tag_ = 0;
  int weight_load_cycles_ = 0;
  int covered_ = 0;
  int tfpu_ = 0;
  std::deque<std::vector<std::int64_t>> queue_;
  std::vector<int> active_;
  std::vector<OutputRow> outputs_;
};

std::unique_ptr<SystolicArray> make_array(Arch arch, const ArrayConfig& config,
                                          Execution exec = Execution::serial);

/// Streams x (T*N rows) against stationary w and reassembles the output in input-row order.
RunResult run_array(Arch arch, const ArrayConfig& config, const Matrix& w, const Matrix& x,
                    Execution exec = Execution::serial);

}  // namespace dipsim
