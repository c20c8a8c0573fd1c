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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "ptypo/errors.hpp"
#include "ptypo/generator.hpp"
#include "ptypo/model.hpp"
#include "ptypo/vocab.hpp"

namespace ptypo {
namespace {

ParallelCorpus labelled(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  return generate(testing::fixture_corpus(), cfg, Resources::defaults()).first;
}

ClassRegistry registry_of(const ParallelCorpus& c) {
  std::vector<LabelClass> labels;
  for (const auto& s : c.sentences) {
    for (const auto& t : s.tokens) labels.push_back(t.label);
  }
  return build_registry(labels);
}

struct Fixture {
  ModelConfig config;
  Vocab vocab;
  ClassRegistry registry;
  std::vector<Example> examples;
  Batch batch;
};

Fixture small_fixture(std::size_t sentences = 6) {
  Fixture f;
  const auto data = labelled(2);
  f.registry = registry_of(data);
  f.config.word_emb_dim = 6;
  f.config.char_emb_dim = 5;
  f.config.lstm_hidden = 7;
  f.config.num_classes = f.registry.size();
  f.vocab = build_vocabs(data, f.config);
  f.examples = make_examples(data, f.config.max_seq_len);
  f.examples.resize(sentences);
  f.batch = encode_batch(f.examples, f.vocab, &f.registry, f.config);
  return f;
}

TEST(Vocab, TinyCorpus) {
  ModelConfig cfg;
  cfg.min_word_freq = 1;
  const std::vector<std::vector<std::string>> s{{"سلام", "دنیا"}};
  const Vocab v = build_vocabs(s, cfg);
  EXPECT_EQ(v.word_count(), 4u);
  EXPECT_EQ(v.word_index("سلام") > 1, true);
  EXPECT_EQ(v.word_index("نه"), Vocab::kUnk);
  EXPECT_EQ(build_vocabs(s, cfg), v);
  EXPECT_THROW(build_vocabs(std::vector<std::vector<std::string>>{}, cfg), DataError);
}

TEST(Vocab, MinFrequencyAndZwnj) {
  ModelConfig cfg;
  const std::vector<std::vector<std::string>> s{{"می‌کند", "می‌کند", "یک"}};
  const Vocab v = build_vocabs(s, cfg);
  EXPECT_EQ(v.word_count(), 3u);
  EXPECT_EQ(v.word_index("یک"), Vocab::kUnk);
  EXPECT_NE(v.chars().find(U'‌'), std::u32string_view::npos);
}

TEST(Encode, MaskAndTruncation) {
  ModelConfig cfg;
  cfg.min_word_freq = 1;
  std::vector<std::string> long_sentence(40, "کتاب");
  const Vocab v = build_vocabs(std::vector<std::vector<std::string>>{long_sentence, {"من"}}, cfg);
  std::vector<Example> ex{{{"من", "کتاب", "نو"}, {}}, {long_sentence, {}}};
  const Batch b = encode_batch(ex, v, nullptr, cfg);
  EXPECT_EQ(b.seq_len, 30u);
  EXPECT_EQ(b.length(0), 3u);
  EXPECT_EQ(b.length(1), 30u);
  EXPECT_EQ(b.real_tokens(), 33u);
  EXPECT_EQ(b.word(0, 2), Vocab::kUnk);
  EXPECT_EQ(b.ch(0, 2, 0), v.char_index(U'ن'));
  EXPECT_EQ(b.ch(0, 2, 1), Vocab::kUnk);  // و never seen
  EXPECT_EQ(b.ch(0, 2, 2), Vocab::kPad);
  EXPECT_EQ(b.label(0, 0), kIgnoreLabel);
}

TEST(Encode, UnknownLabelRejected) {
  auto f = small_fixture();
  auto ex = f.examples;
  ex[0].labels[0] = LabelClass::of({ErrorTag::kFaToAr, ErrorTag::kFaToAr});
  if (!f.registry.find(ex[0].labels[0])) {
    EXPECT_THROW(encode_batch(ex, f.vocab, &f.registry, f.config), DataError);
  }
}

TEST(Params, LayoutAndCount) {
  auto f = small_fixture();
  const auto p = init_params<double>(f.config, 50, 20, 1);
  const std::size_t H = 7, D0 = 11, K = f.config.num_classes;
  ASSERT_EQ(p.tensors().size(), 2u + 6 + 8 + 3);
  const std::size_t expected = 50 * 6 + 20 * 5 + 2 * (4 * H * D0 + 4 * H * H + 4 * H) +
                               2 * (4 * H * 2 * H + 4 * H * H + 4 * H) + 2 * K * H + K;
  EXPECT_EQ(p.parameter_count(), expected);
  EXPECT_EQ(p.bias(0, Direction::kForward)(H, 0), 1.0);  // forget gate
  EXPECT_EQ(p.bias(0, Direction::kForward)(0, 0), 0.0);
  EXPECT_LE(p.word_embedding().cwiseAbs().maxCoeff(), 0.05);
  EXPECT_EQ(init_params<double>(f.config, 50, 20, 1), p);
}

TEST(Forward, RowsSumToOneAndPaddingIsZero) {
  auto f = small_fixture();
  const auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  const auto probs = forward(p, f.config, f.batch);
  const std::size_t K = f.config.num_classes;
  for (std::size_t cell = 0; cell < f.batch.mask.size(); ++cell) {
    double sum = 0;
    for (std::size_t k = 0; k < K; ++k) sum += probs[cell * K + k];
    EXPECT_NEAR(sum, f.batch.mask[cell] ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_EQ(forward(p, f.config, f.batch), probs);
}

TEST(Forward, ZeroWeightsGiveUniform) {
  auto f = small_fixture();
  auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  p.set_zero();
  const auto probs = forward(p, f.config, f.batch);
  const double u = 1.0 / static_cast<double>(f.config.num_classes);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (f.batch.mask[i / f.config.num_classes]) EXPECT_DOUBLE_EQ(probs[i], u);
  }
}

TEST(Forward, ShiftingLogitsKeepsArgmax) {
  auto f = small_fixture();
  auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  auto argmax = [&](const std::vector<double>& probs) {
    std::vector<std::size_t> out;
    const std::size_t K = f.config.num_classes;
    for (std::size_t cell = 0; cell < f.batch.mask.size(); ++cell) {
      auto first = probs.begin() + static_cast<std::ptrdiff_t>(cell * K);
      out.push_back(static_cast<std::size_t>(std::max_element(first, first + static_cast<std::ptrdiff_t>(K)) - first));
    }
    return out;
  };
  const auto before = argmax(forward(p, f.config, f.batch));
  p.dense_b().array() += 2.5;
  EXPECT_EQ(argmax(forward(p, f.config, f.batch)), before);
}

TEST(Loss, AnalyticValues) {
  auto f = small_fixture();
  const std::size_t K = f.config.num_classes;
  std::vector<double> onehot(f.batch.mask.size() * K, 0.0), uniform(onehot.size(), 1.0 / K);
  for (std::size_t cell = 0; cell < f.batch.mask.size(); ++cell) {
    if (f.batch.labels[cell] >= 0) onehot[cell * K + static_cast<std::size_t>(f.batch.labels[cell])] = 1;
  }
  EXPECT_EQ(masked_cross_entropy(onehot, f.batch, K), 0.0);
  EXPECT_NEAR(masked_cross_entropy(uniform, f.batch, K), std::log(static_cast<double>(K)), 1e-12);
  Batch empty = f.batch;
  std::fill(empty.mask.begin(), empty.mask.end(), 0);
  EXPECT_THROW(masked_cross_entropy(uniform, empty, K), DataError);
}

TEST(Loss, MaskedLabelsDoNotMatter) {
  auto f = small_fixture();
  const auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  Batch other = f.batch;
  for (std::size_t i = 0; i < other.mask.size(); ++i) {
    if (!other.mask[i]) other.labels[i] = 1;
  }
  ModelParams<double> g1, g2;
  EXPECT_EQ(loss_and_gradients<double>(p, f.config, f.batch, nullptr, g1),
            loss_and_gradients<double>(p, f.config, other, nullptr, g2));
  EXPECT_EQ(g1, g2);
}

TEST(Gradients, UnusedRowsAreZero) {
  auto f = small_fixture(2);
  const auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  ModelParams<double> g;
  loss_and_gradients<double>(p, f.config, f.batch, nullptr, g);
  std::set<std::int32_t> used_words, used_chars;
  for (std::size_t b = 0; b < f.batch.batch_size; ++b) {
    for (std::size_t t = 0; t < f.batch.length(b); ++t) {
      used_words.insert(f.batch.word(b, t));
      for (std::size_t k = 0; k < f.batch.word_len; ++k) used_chars.insert(f.batch.ch(b, t, k));
    }
  }
  ASSERT_FALSE(used_words.contains(Vocab::kPad));
  for (Eigen::Index r = 0; r < g.word_embedding().rows(); ++r) {
    if (!used_words.contains(static_cast<std::int32_t>(r))) {
      EXPECT_TRUE(g.word_embedding().row(r).isZero(0.0)) << r;
    }
  }
  // PAD characters fill the word tails but are left out of the mean.
  EXPECT_TRUE(g.char_embedding().row(Vocab::kPad).isZero(0.0));
  for (Eigen::Index r = 0; r < g.char_embedding().rows(); ++r) {
    if (!used_chars.contains(static_cast<std::int32_t>(r))) {
      EXPECT_TRUE(g.char_embedding().row(r).isZero(0.0));
    }
  }
}

TEST(Gradients, ThreadCountDoesNotMatter) {
  auto f = small_fixture(20);
  const auto p = init_params<float>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  RngStream rng(4);
  const auto mask = draw_dropout_mask<float>(f.batch.batch_size, f.config.input_dim(), 0.3, rng);
  ModelParams<float> g1, g4;
  const float l1 = loss_and_gradients(p, f.config, f.batch, &mask, g1, 1);
  const float l4 = loss_and_gradients(p, f.config, f.batch, &mask, g4, 4);
  EXPECT_EQ(l1, l4);
  EXPECT_EQ(g1, g4);
}

TEST(Dropout, MaskValuesAndExpectation) {
  RngStream rng(8);
  const double rate = 0.3;
  const double keep = 1.0 / (1.0 - rate);
  double sum = 0;
  std::size_t n = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = draw_dropout_mask<double>(8, 96, rate, rng);
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      const double x = m.data()[k];
      ASSERT_TRUE(x == 0.0 || x == keep);
      sum += x;
      ++n;
    }
  }
  ASSERT_GE(n, 10000u);
  EXPECT_NEAR(sum / static_cast<double>(n), 1.0, 0.02);
  EXPECT_TRUE(draw_dropout_mask<double>(2, 3, 0.0, rng).isOnes(0.0));
}

TEST(Dropout, TrainModeDiffersInferModeDoesNot) {
  auto f = small_fixture();
  const auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  RngStream a(1), b(1), c(2);
  EXPECT_EQ(forward(p, f.config, f.batch, Mode::kTrain, a), forward(p, f.config, f.batch, Mode::kTrain, b));
  EXPECT_NE(forward(p, f.config, f.batch, Mode::kTrain, c), forward(p, f.config, f.batch));
  EXPECT_EQ(forward(p, f.config, f.batch, Mode::kInfer, c), forward(p, f.config, f.batch));
}

TEST(Mirror, IsAnInvolution) {
  auto f = small_fixture();
  const auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  EXPECT_NE(mirror_directions(p), p);
  EXPECT_EQ(mirror_directions(mirror_directions(p)), p);
}

TEST(Adam, SingleStepAndZeroGradient) {
  AdamConfig cfg;
  cfg.epsilon = 0;
  cfg.learning_rate = 0.01;
  double x = 1.0, m = 0, v = 0;
  adam_update(x, 1.0, m, v, 1, cfg);
  EXPECT_EQ(x, 0.99);

  auto f = small_fixture();
  auto p = init_params<double>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
  const auto before = p;
  auto zero = p;
  zero.set_zero();
  auto state = make_adam_state(p);
  adam_step(p, zero, state, AdamConfig{});
  EXPECT_EQ(p, before);
  EXPECT_EQ(state.step, 1u);
}

TEST(Adam, RepeatableSteps) {
  auto f = small_fixture();
  auto run = [&] {
    auto p = init_params<float>(f.config, f.vocab.word_count(), f.vocab.char_count(), 3);
    auto state = make_adam_state(p);
    ModelParams<float> g;
    for (int i = 0; i < 3; ++i) {
      loss_and_gradients<float>(p, f.config, f.batch, nullptr, g);
      adam_step(p, g, state, AdamConfig{.learning_rate = 1e-2});
    }
    return p;
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace ptypo
