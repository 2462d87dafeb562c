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

#include "dipsim/matrix.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dipsim {

std::int64_t wrap_to_width(std::int64_t value, int bits) {
  if (bits >= 64) return value;
  const auto mask = (std::uint64_t{1} << bits) - 1;
  auto u = static_cast<std::uint64_t>(value) & mask;
  if (u & (std::uint64_t{1} << (bits - 1))) u |= ~mask;
  return static_cast<std::int64_t>(u);
}

bool fits_width(std::int64_t value, int bits) {
  if (bits >= 64) return true;
  const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
  const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
  return value >= lo && value <= hi;
}

namespace {

void check_shape(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix dimensions must be positive, got " + std::to_string(rows) +
                                "x" + std::to_string(cols));
  }
}

void check_width(int width) {
  if (width < 2 || width > 64) throw std::invalid_argument("element width must be in [2, 64]");
}

}  // namespace

Matrix::Matrix(int rows, int cols, int width)
    : rows_(rows), cols_(cols), width_(width) {
  check_shape(rows, cols);
  check_width(width);
  data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

Matrix::Matrix(int rows, int cols, std::vector<std::int64_t> elements, int width)
    : rows_(rows), cols_(cols), width_(width), data_(std::move(elements)) {
  check_shape(rows, cols);
  check_width(width);
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("element count does not match matrix shape");
  }
  for (auto v : data_) {
    if (!fits_width(v, width_)) {
      throw std::out_of_range("element " + std::to_string(v) + " exceeds " +
                              std::to_string(width_) + "-bit range");
    }
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows, int width)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0),
      width_(width) {
  check_shape(rows_, cols_);
  check_width(width);
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    for (auto v : r) {
      if (!fits_width(v, width_)) throw std::out_of_range("matrix literal exceeds width");
      data_.push_back(v);
    }
  }
}

Matrix Matrix::identity(int n, int width) {
  Matrix m(n, n, width);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::size_t Matrix::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw std::out_of_range("matrix index (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return static_cast<std::size_t>(r) * cols_ + c;
}

void Matrix::set(int r, int c, std::int64_t value) {
  if (!fits_width(value, width_)) {
    throw std::out_of_range("value " + std::to_string(value) + " exceeds " +
                            std::to_string(width_) + "-bit range");
  }
  data_[index(r, c)] = value;
}

std::span<const std::int64_t> Matrix::row(int r) const {
  return std::span<const std::int64_t>(data_).subspan(index(r, 0), cols_);
}

Matrix Matrix::block(int r0, int c0, int rows, int cols) const {
  Matrix out(rows, cols, width_);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int sr = r0 + r;
      const int sc = c0 + c;
      if (sr < rows_ && sc < cols_) out.data_[out.index(r, c)] = data_[index(sr, sc)];
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (int r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (int c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

namespace {

void check_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

void multiply_row(const Matrix& a, const Matrix& b, int i, std::vector<std::int64_t>& out) {
  const auto ar = a.row(i);
  auto* dst = out.data() + static_cast<std::size_t>(i) * b.cols();
  for (int k = 0; k < a.cols(); ++k) {
    const auto av = ar[k];
    const auto br = b.row(k);
    for (int j = 0; j < b.cols(); ++j) dst[j] += av * br[j];
  }
}

}  // namespace

Matrix matmul_reference(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  std::vector<std::int64_t> out(static_cast<std::size_t>(a.rows()) * b.cols(), 0);
  for (int i = 0; i < a.rows(); ++i) multiply_row(a, b, i, out);
  return Matrix(a.rows(), b.cols(), std::move(out));
}

Matrix matmul_reference_parallel(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  std::vector<std::int64_t> out(static_cast<std::size_t>(a.rows()) * b.cols(), 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows(); ++i) multiply_row(a, b, i, out);
  return Matrix(a.rows(), b.cols(), std::move(out));
}

Matrix random_matrix(int rows, int cols, int width, std::uint64_t seed) {
  check_shape(rows, cols);
  check_width(width);
  // mt19937_64 output is specified by the standard; the value mapping below
  // avoids uniform_int_distribution so results match across standard libraries.
  std::mt19937_64 gen(seed);
  const auto span = width >= 64 ? 0 : (std::uint64_t{1} << width);
  const std::int64_t lo = width >= 64 ? std::numeric_limits<std::int64_t>::min()
                                      : -(std::int64_t{1} << (width - 1));
  std::vector<std::int64_t> v(static_cast<std::size_t>(rows) * cols);
  for (auto& e : v) {
    const auto draw = gen();
    e = span ? lo + static_cast<std::int64_t>(draw % span) : static_cast<std::int64_t>(draw);
  }
  return Matrix(rows, cols, std::move(v), width);
}

Matrix read_matrix_csv(std::istream& in, int width) {
  std::vector<std::int64_t> values;
  int rows = 0;
  int cols = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    int count = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) {
        throw std::invalid_argument("empty cell on line " + std::to_string(line_no));
      }
      const char* first = cell.data() + b;
      const char* last = cell.data() + e + 1;
      if (*first == '+') ++first;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("bad integer '" + cell + "' on line " + std::to_string(line_no));
      }
      values.push_back(v);
      ++count;
    }
    if (cols < 0) cols = count;
    if (count != cols) {
      throw std::invalid_argument("line " + std::to_string(line_no) + " has " +
                                  std::to_string(count) + " columns, expected " +
                                  std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("matrix file is empty");
  return Matrix(rows, cols, std::move(values), width);
}

Matrix read_matrix_csv(const std::filesystem::path& path, int width) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix_csv(in, width);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix_csv(out, m);
}

}  // namespace dipsim
