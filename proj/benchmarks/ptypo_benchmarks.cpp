//
// Copyright 2026 The ptypo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <benchmark/benchmark.h>

#include <filesystem>

#include "ptypo/corpus.hpp"
#include "ptypo/generator.hpp"
#include "ptypo/model.hpp"
#include "ptypo/text.hpp"
#include "ptypo/train.hpp"

namespace ptypo {
namespace {

const Corpus& fixture() {
  static const Corpus c =
      load_corpus(std::filesystem::path(PTYPO_BENCH_DATA_DIR) / "fixtures" / "synthetic_500.tsv");
  return c;
}

const Resources& res() {
  static const Resources r = Resources::defaults();
  return r;
}

void BM_CorruptWord(benchmark::State& state) {
  const std::u32string word = text::decode_utf8("می‌خواهم");
  RngStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(corrupt_word(word, 2, rng, all_error_tags(), res()));
  }
}
BENCHMARK(BM_CorruptWord);

void BM_Generate(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.seed = 1;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(fixture(), cfg, res()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * fixture().token_count()));
}
BENCHMARK(BM_Generate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

struct DetectorSetup {
  ModelConfig config;
  Batch batch;
  ModelParams<float> params;
};

const DetectorSetup& detector() {
  static const DetectorSetup d = [] {
    DetectorSetup s;
    GeneratorConfig gc;
    gc.seed = 1;
    const auto data = generate(fixture(), gc, res()).first;
    std::vector<LabelClass> labels;
    for (const auto& sen : data.sentences) {
      for (const auto& t : sen.tokens) labels.push_back(t.label);
    }
    const auto registry = build_registry(labels);
    s.config.num_classes = registry.size();
    const Vocab vocab = build_vocabs(data, s.config);
    auto examples = make_examples(data, s.config.max_seq_len);
    examples.resize(256);
    s.batch = encode_batch(examples, vocab, &registry, s.config);
    s.params = init_params<float>(s.config, vocab.word_count(), vocab.char_count(), 1);
    return s;
  }();
  return d;
}

void BM_Forward(benchmark::State& state) {
  const auto& d = detector();
  for (auto _ : state) benchmark::DoNotOptimize(forward(d.params, d.config, d.batch));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d.batch.real_tokens()));
}
BENCHMARK(BM_Forward)->Unit(benchmark::kMillisecond);

void BM_LossAndGradients(benchmark::State& state) {
  const auto& d = detector();
  ModelParams<float> grads;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_and_gradients<float>(d.params, d.config, d.batch, nullptr, grads,
                                                       static_cast<unsigned>(state.range(0))));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d.batch.real_tokens()));
}
BENCHMARK(BM_LossAndGradients)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ptypo

BENCHMARK_MAIN();
