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

#include "dipsim/workloads.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dipsim {

namespace embedded {
extern const std::string_view kPresetsJson;
}

void TransformerConfig::validate() const {
  if (seq_len < 1 || d_model < 1 || d_k < 1 || d_ffn < 1 || n_heads < 1) {
    throw std::invalid_argument("transformer hyper-parameters must all be positive");
  }
}

std::vector<WorkloadDim> mha_workloads(const TransformerConfig& cfg) {
  cfg.validate();
  const int l = cfg.seq_len;
  const int h = cfg.n_heads;
  return {
      {"q_proj", l, cfg.d_model, cfg.d_k, h, false},
      {"k_proj", l, cfg.d_model, cfg.d_k, h, false},
      {"v_proj", l, cfg.d_model, cfg.d_k, h, false},
      {"qk_t", l, cfg.d_k, l, h, false},
      {"softmax", l, cfg.d_k, l, h, true},
      {"attn_v", l, l, cfg.d_k, h, false},
      {"out_proj", l, cfg.d_model, cfg.d_model, 1, false},
  };
}

std::vector<WorkloadDim> ffn_workloads(const TransformerConfig& cfg) {
  cfg.validate();
  const int l = cfg.seq_len;
  return {
      {"ffn1", l, cfg.d_model, cfg.d_ffn, 1, false},
      {"activation", l, cfg.d_model, cfg.d_ffn, 1, true},
      {"ffn2", l, cfg.d_ffn, cfg.d_model, 1, false},
  };
}

std::vector<WorkloadDim> layer_workloads(const TransformerConfig& cfg) {
  auto jobs = mha_workloads(cfg);
  auto ffn = ffn_workloads(cfg);
  jobs.insert(jobs.end(), ffn.begin(), ffn.end());
  return jobs;
}

bool SweepSets::contains(const TransformerConfig& cfg) const {
  auto in = [](const std::vector<int>& set, int v) {
    return std::find(set.begin(), set.end(), v) != set.end();
  };
  return in(seq_len, cfg.seq_len) && in(d_model, cfg.d_model) && in(d_k, cfg.d_k) &&
         in(d_ffn, cfg.d_ffn);
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::map<std::string, ModelPreset> parse_presets(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::map<std::string, ModelPreset> presets;
  for (const auto& m : doc.at("models")) {
    ModelPreset p;
    p.name = m.at("name").get<std::string>();
    p.family = m.value("family", "");
    p.source = m.value("source", "");
    p.config.seq_len = m.at("seq_len").get<int>();
    p.config.d_model = m.at("d_model").get<int>();
    p.config.d_k = m.at("d_k").get<int>();
    p.config.d_ffn = m.at("d_ffn").get<int>();
    p.config.n_heads = m.at("n_heads").get<int>();
    p.config.validate();
    if (!presets.emplace(p.name, p).second) {
      throw std::invalid_argument("duplicate preset '" + p.name + "'");
    }
  }
  return presets;
}

std::map<std::string, ModelPreset> load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open preset file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presets(ss.str());
}

const std::map<std::string, ModelPreset>& model_presets() {
  static const auto presets = parse_presets(embedded::kPresetsJson);
  return presets;
}

const ModelPreset& lookup_preset(std::string_view name) {
  const auto key = lower(name);
  for (const auto& [preset_name, preset] : model_presets()) {
    if (lower(preset_name) == key) return preset;
  }
  throw std::out_of_range("unknown model preset '" + std::string(name) + "'");
}

}  // namespace dipsim
