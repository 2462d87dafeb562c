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

#include <vector>

#include "dipsim/systolic_array.hpp"

namespace dipsim {

/**
 * Diagonal-input, permutated-weight stationary array.
 *
 * A full input row is registered into PE row 0 in one clock. Each clock the
 * registered inputs of row r move to row r+1 rotated left by one position:
 * PE(r, c) feeds PE(r+1, (c-1) mod N), so the leftmost PE wraps around to the
 * rightmost PE of the next row. PE(r, c) holds permute_weights(w)[r][c], which
 * makes PE(r, c) multiply x[(r+c) mod N] by w[(r+c) mod N][c]; column sums come
 * out in natural order and no skew FIFOs are needed.
 */
class DipArray final : public SystolicArray {
 public:
  explicit DipArray(ArrayConfig config, Execution exec = Execution::serial);

  Arch arch() const override { return Arch::dip; }
  std::int64_t weight(int r, int c) const override;
  std::optional<std::int64_t> input_register(int r, int c) const override;
  int fifo_registers() const override { return 0; }
  void corrupt_weight(int r, int c) override;

  /// Registered input operands of PE row r, empty when the row is idle.
  std::optional<std::vector<std::int64_t>> input_row(int r) const;

 protected:
  Matrix stationary_image(const Matrix& w) const override;
  void shift_weight_row(std::span<const std::int64_t> row) override;
  ClockResult clock(const std::vector<std::int64_t>* inject, int tag) override;
  bool in_flight() const override;
  void reset_datapath() override;

 private:
  // Enables are shared per PE row, so liveness is tracked per row.
  struct State {
    std::vector<std::int64_t> in, mul, acc;  // n * n, row-major
    std::vector<int> in_tag, mul_tag, acc_tag;  // per row; negative when idle
  };

  std::size_t at(int r, int c) const { return static_cast<std::size_t>(r) * n() + c; }
  State blank_state() const;

  std::vector<std::int64_t> weights_;
  State cur_;
  State next_;
};

/// dip_run: stream x against w (unpermutated) on a fresh DiP array.
RunResult dip_run(const ArrayConfig& config, const Matrix& w, const Matrix& x,
                  Execution exec = Execution::serial);

}  // namespace dipsim
