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
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace dipsim {

/// Sign-extend the low `bits` of `value` (two's-complement wraparound).
std::int64_t wrap_to_width(std::int64_t value, int bits);

/// True when `value` fits a signed two's-complement integer of `bits`.
bool fits_width(std::int64_t value, int bits);

/**
 * Dense row-major signed integer matrix.
 *
 * `width` is the declared two's-complement bit-width of the elements; the
 * constructor and `set` reject values outside it. Reference products use
 * width 64.
 */
class Matrix {
 public:
  Matrix(int rows, int cols, int width = 64);
  Matrix(int rows, int cols, std::vector<std::int64_t> elements, int width = 64);
  Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows, int width = 64);

  static Matrix identity(int n, int width = 64);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int width() const { return width_; }
  bool square() const { return rows_ == cols_; }

  std::int64_t operator()(int r, int c) const { return data_[index(r, c)]; }
  void set(int r, int c, std::int64_t value);

  std::span<const std::int64_t> row(int r) const;
  std::span<const std::int64_t> elements() const { return data_; }

  /// Copy of the `rows`x`cols` block at (r0, c0); cells outside this matrix read as zero.
  Matrix block(int r0, int c0, int rows, int cols) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int r, int c) const;

  int rows_;
  int cols_;
  int width_;
  std::vector<std::int64_t> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// C = A * B in 64-bit accumulation. Throws std::invalid_argument on a.cols != b.rows.
Matrix matmul_reference(const Matrix& a, const Matrix& b);

/// Same contract as matmul_reference; output rows are distributed over OpenMP threads.
Matrix matmul_reference_parallel(const Matrix& a, const Matrix& b);

/// Uniform signed values over the full range of `width`, deterministic for a seed.
Matrix random_matrix(int rows, int cols, int width, std::uint64_t seed);

/// One row per line, comma-separated signed decimals. Blank lines are ignored.
Matrix read_matrix_csv(std::istream& in, int width = 64);
Matrix read_matrix_csv(const std::filesystem::path& path, int width = 64);
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

}  // namespace dipsim
