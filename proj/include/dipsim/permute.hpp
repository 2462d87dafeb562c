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

#include "dipsim/matrix.hpp"

namespace dipsim {

/// Rotate column i of `w` upward by i: out[j][i] = w[(j + i) mod rows][i].
/// Defined for any shape; the DiP array itself needs a square matrix.
Matrix permute_weights(const Matrix& w);

/// Undo permute_weights: out[(j + i) mod rows][i] = wp[j][i].
Matrix inverse_permute(const Matrix& wp);

}  // namespace dipsim
