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

#include "dipsim/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace dipsim {

std::string_view to_string(Arch arch) { return arch == Arch::ws ? "ws" : "dip"; }

Arch parse_arch(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ws") return Arch::ws;
  if (lower == "dip") return Arch::dip;
  throw std::invalid_argument("unknown architecture '" + std::string(text) + "' (expected ws or dip)");
}

void ArrayConfig::validate() const {
  if (n < 2) throw std::invalid_argument("array size n must be >= 2");
  if (mac_stages != 1 && mac_stages != 2) throw std::invalid_argument("mac_stages must be 1 or 2");
  if (input_width < 2 || weight_width < 2) throw std::invalid_argument("operand widths must be >= 2");
  if (product_width() > 64 || psum_width < 2 || psum_width > 64) {
    throw std::invalid_argument("datapath widths must fit in 64 bits");
  }
}

std::optional<std::string> ArrayConfig::overflow_warning() const {
  const int log2n = std::bit_width(static_cast<unsigned>(n - 1));  // ceil(log2(n))
  const int needed = input_width + weight_width + log2n;
  if (psum_width >= needed) return std::nullopt;
  return "psum_width " + std::to_string(psum_width) + " < " + std::to_string(needed) +
         " bits needed for an exact " + std::to_string(n) + "-term column sum; results may wrap";
}

}  // namespace dipsim
