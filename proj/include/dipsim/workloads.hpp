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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dipsim {

struct TransformerConfig {
  int seq_len = 0;
  int d_model = 0;
  int d_k = 0;
  int d_ffn = 0;
  int n_heads = 0;

  /// Throws std::invalid_argument when any field is not positive.
  void validate() const;
};

/// One matmul job: an (m x n) matrix times an (n x k) matrix, `count` times per layer.
/// Marker rows (softmax, activation) keep the table layout but carry no matmul cost.
struct WorkloadDim {
  std::string name;
  int m = 1;
  int n = 1;
  int k = 1;
  int count = 1;
  bool marker = false;

  double macs() const { return marker ? 0.0 : static_cast<double>(m) * n * k * count; }
};

/// Q/K/V projections, Q*K^T, softmax marker, S*V, and the output projection.
std::vector<WorkloadDim> mha_workloads(const TransformerConfig& cfg);

/// FFN1, activation marker, FFN2.
std::vector<WorkloadDim> ffn_workloads(const TransformerConfig& cfg);

/// mha_workloads followed by ffn_workloads.
std::vector<WorkloadDim> layer_workloads(const TransformerConfig& cfg);

struct ModelPreset {
  std::string name;
  std::string family;
  std::string source;
  TransformerConfig config;
};

/// Sweep values the presets are restricted to.
struct SweepSets {
  std::vector<int> seq_len{64, 128, 256, 512, 1024, 2048};
  std::vector<int> d_model{512, 768, 1024, 1280, 5120};
  std::vector<int> d_k{64, 128};
  std::vector<int> d_ffn{2048, 3072, 4096, 5120};

  bool contains(const TransformerConfig& cfg) const;
};

/// Presets shipped with the library (data/presets.json at build time), keyed by name.
const std::map<std::string, ModelPreset>& model_presets();

/// Presets from a JSON file with the same schema as data/presets.json.
std::map<std::string, ModelPreset> load_presets(const std::filesystem::path& path);
std::map<std::string, ModelPreset> parse_presets(std::string_view json_text);

/// Case-insensitive lookup; throws std::out_of_range for an unknown name.
const ModelPreset& lookup_preset(std::string_view name);

}  // namespace dipsim
