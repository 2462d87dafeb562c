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

#include "dipsim/permute.hpp"

namespace dipsim {

Matrix permute_weights(const Matrix& w) {
  Matrix out(w.rows(), w.cols(), w.width());
  const int rows = w.rows();
  for (int i = 0; i < w.cols(); ++i) {
    for (int j = 0; j < rows; ++j) out.set(j, i, w((j + i) % rows, i));
  }
  return out;
}

Matrix inverse_permute(const Matrix& wp) {
  Matrix out(wp.rows(), wp.cols(), wp.width());
  const int rows = wp.rows();
  for (int i = 0; i < wp.cols(); ++i) {
    for (int j = 0; j < rows; ++j) out.set((j + i) % rows, i, wp(j, i));
  }
  return out;
}

}  // namespace dipsim
