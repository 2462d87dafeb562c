#include <algorithm>
#include <filesystem>
#include <fstream>

#include "dipsim/workloads.hpp"
#include "doctest.h"

using dipsim::TransformerConfig;
using dipsim::WorkloadDim;

namespace {

const WorkloadDim& find(const std::vector<WorkloadDim>& jobs, const std::string& name) {
  const auto it = std::find_if(jobs.begin(), jobs.end(), [&](const auto& j) { return j.name == name; });
  REQUIRE(it != jobs.end());
  return *it;
}

}  // namespace

TEST_CASE("MHA dimensions") {
  const TransformerConfig cfg{64, 512, 64, 2048, 8};
  const auto jobs = dipsim::mha_workloads(cfg);
  const auto& q = find(jobs, "q_proj");
  CHECK(q.m == 64);
  CHECK(q.n == 512);
  CHECK(q.k == 64);
  CHECK(q.count == 8);
  const auto& out = find(jobs, "out_proj");
  CHECK(out.n == 512);
  CHECK(out.k == 512);
  CHECK(out.count == 1);

  const auto jobs128 = dipsim::mha_workloads({128, 768, 64, 3072, 12});
  const auto& qk = find(jobs128, "qk_t");
  CHECK(qk.m == 128);
  CHECK(qk.n == 64);
  CHECK(qk.k == 128);
  const auto& sv = find(jobs128, "attn_v");
  CHECK(sv.m == 128);
  CHECK(sv.n == 128);
  CHECK(sv.k == 64);
  CHECK(find(jobs128, "softmax").marker);
  CHECK(find(jobs128, "softmax").macs() == 0.0);
}

TEST_CASE("single head yields one job per row") {
  const auto jobs = dipsim::mha_workloads({64, 512, 64, 2048, 1});
  int projections = 0;
  int matmuls = 0;
  for (const auto& j : jobs) {
    if (j.marker) continue;
    ++matmuls;
    if (j.name.ends_with("_proj") && j.name != "out_proj") projections += j.count;
  }
  CHECK(projections == 3);
  CHECK(matmuls == 6);
}

TEST_CASE("FFN dimensions chain") {
  const auto jobs = dipsim::ffn_workloads({512, 768, 64, 3072, 12});
  const auto& f1 = find(jobs, "ffn1");
  const auto& f2 = find(jobs, "ffn2");
  CHECK((f1.m == 512 && f1.n == 768 && f1.k == 3072));
  CHECK((f2.m == 512 && f2.n == 3072 && f2.k == 768));
  CHECK(f1.k == f2.n);

  const auto small = dipsim::ffn_workloads({64, 512, 64, 2048, 8});
  CHECK(find(small, "ffn1").k == 2048);
  CHECK(find(small, "ffn2").n == 2048);
  CHECK(find(small, "activation").marker);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(dipsim::mha_workloads({0, 512, 64, 2048, 8}), std::invalid_argument);
  CHECK_THROWS_AS(dipsim::ffn_workloads({64, 512, 64, 2048, -1}), std::invalid_argument);
}

TEST_CASE("presets: nine models inside the sweep sets, 64-divisible dims") {
  const auto& presets = dipsim::model_presets();
  CHECK(presets.size() == 9);
  const dipsim::SweepSets sweep;
  for (const auto& [name, p] : presets) {
    INFO(name);
    CHECK(sweep.contains(p.config));
    CHECK(p.config.d_model % p.config.n_heads == 0);
    for (const auto& j : dipsim::layer_workloads(p.config)) {
      CHECK(j.m > 0);
      CHECK(j.m % 64 == 0);
      CHECK(j.n % 64 == 0);
      CHECK(j.k % 64 == 0);
    }
  }
  for (const char* name : {"Vanilla-Transformer", "T5", "BART", "BERT", "ALBERT", "Transformer-XL",
                           "GPT-2", "GPT-3", "LLaMA"}) {
    CHECK_NOTHROW(dipsim::lookup_preset(name));
  }
}

TEST_CASE("preset lookup") {
  const auto& gpt3 = dipsim::lookup_preset("GPT-3");
  CHECK(gpt3.config.d_model == 5120);
  CHECK(gpt3.config.d_k == 128);
  CHECK(dipsim::lookup_preset("gpt-3").name == "GPT-3");
  CHECK_THROWS_AS(dipsim::lookup_preset("unknown"), std::out_of_range);
}

TEST_CASE("presets load from an editable file") {
  const auto path = std::filesystem::temp_directory_path() / "dipsim_presets_test.json";
  {
    std::ofstream out(path);
    out << R"({"models": [{"name": "Tiny", "seq_len": 64, "d_model": 512, "d_k": 64,
                          "d_ffn": 2048, "n_heads": 8}]})";
  }
  const auto presets = dipsim::load_presets(path);
  REQUIRE(presets.size() == 1);
  CHECK(presets.at("Tiny").config.d_ffn == 2048);
  std::filesystem::remove(path);

  CHECK_THROWS(dipsim::parse_presets(R"({"models": [{"name": "Bad", "seq_len": 0, "d_model": 1,
                                        "d_k": 1, "d_ffn": 1, "n_heads": 1}]})"));
  CHECK_THROWS(dipsim::load_presets("/nonexistent/presets.json"));
}
