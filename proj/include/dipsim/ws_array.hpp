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

#include <map>

#include "dipsim/systolic_array.hpp"

namespace dipsim {

/**
 * Conventional weight-stationary array with input and output skew FIFOs.
 *
 * PE(r, c) holds w[r][c]. Element x[i][r] enters row r through an input FIFO
 * of depth r and moves right one PE per clock; partial sums move down each
 * column and leave through an output FIFO of depth N-1-c, so a whole output
 * row emerges in a single cycle.
 */
class WsArray final : public SystolicArray {
 public:
  explicit WsArray(ArrayConfig config, Execution exec = Execution::serial);

  Arch arch() const override { return Arch::ws; }
  std::int64_t weight(int r, int c) const override;
  std::optional<std::int64_t> input_register(int r, int c) const override;
  int fifo_registers() const override;
  void corrupt_weight(int r, int c) override;

  /// Depth of the input FIFO feeding row r (0 for row 0).
  int input_fifo_depth(int r) const;
  /// Depth of the output FIFO below column c (0 for the last column).
  int output_fifo_depth(int c) const;

 protected:
  Matrix stationary_image(const Matrix& w) const override { return w; }
  void shift_weight_row(std::span<const std::int64_t> row) override;
  ClockResult clock(const std::vector<std::int64_t>* inject, int tag) override;
  bool in_flight() const override;
  void reset_datapath() override;

 private:
  struct Slot {
    std::int64_t value = 0;
    int tag = -1;  // input row index; negative when the register is idle
    bool live() const { return tag >= 0; }
  };

  struct State {
    std::vector<Slot> in, mul, acc;         // n * n, row-major
    std::vector<std::vector<Slot>> in_fifo;   // row r: r stages, [0] is the entry
    std::vector<std::vector<Slot>> out_fifo;  // col c: n-1-c stages, [0] is the entry
  };

  std::size_t at(int r, int c) const { return static_cast<std::size_t>(r) * n() + c; }
  State blank_state() const;

  struct PartialRow {
    std::vector<std::int64_t> values;
    int filled = 0;
  };

  std::vector<std::int64_t> weights_;
  State cur_;
  State next_;
  std::map<int, PartialRow> assembling_;
};

/// ws_run: stream x against w on a fresh WS array.
RunResult ws_run(const ArrayConfig& config, const Matrix& w, const Matrix& x,
                 Execution exec = Execution::serial);

/// Input plus output skew FIFO entries: N(N-1).
long long ws_fifo_register_count(int n);

}  // namespace dipsim
