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

#include "ptypo/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "ptypo/errors.hpp"

namespace ptypo {
namespace {

constexpr std::size_t kEvalBatch = 256;
constexpr std::uint64_t kShuffleSalt = 0x73687566666c65ULL;
constexpr std::uint64_t kDropoutSalt = 0x64726f706f7574ULL;

struct EvalSums {
  double loss = 0;
  std::size_t correct = 0;
  std::size_t tokens = 0;
};

std::size_t argmax(const float* row, std::size_t k) {
  return static_cast<std::size_t>(std::max_element(row, row + k) - row);
}

ModelConfig with_class_count(ModelConfig config, const ClassRegistry& registry) {
  if (config.num_classes == 0) config.num_classes = registry.size();
  if (config.num_classes != registry.size()) {
    throw DataError("num_classes " + std::to_string(config.num_classes) +
                    " does not match the label registry size " + std::to_string(registry.size()));
  }
  return config;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw DataError("epochs must be at least 1");
  if (batch_size < 1) throw DataError("batch_size must be at least 1");
  if (!(adam.learning_rate > 0)) throw DataError("learning rate must be positive");
  if (!(adam.beta1 >= 0 && adam.beta1 < 1) || !(adam.beta2 >= 0 && adam.beta2 < 1)) {
    throw DataError("Adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0)) throw DataError("Adam epsilon must be positive");
  if (stop_at_train_accuracy && !(*stop_at_train_accuracy > 0 && *stop_at_train_accuracy <= 1)) {
    throw DataError("stop_at_train_accuracy must lie in (0, 1]");
  }
}

std::string format_history(std::span<const EpochRecord> history) {
  std::string out = "epoch\ttrain_loss\tval_loss\ttrain_acc\tval_acc\n";
  char line[160];
  for (const auto& r : history) {
    std::snprintf(line, sizeof line, "%zu\t%.8g\t%.8g\t%.8g\t%.8g\n", r.epoch, r.train_loss,
                  r.val_loss, r.train_accuracy, r.val_accuracy);
    out += line;
  }
  return out;
}

LossAccuracy evaluate_examples(const Model& model, std::span<const Example> examples,
                               unsigned threads) {
  const std::size_t K = model.registry.size();
  const std::size_t batches = (examples.size() + kEvalBatch - 1) / kEvalBatch;
  std::vector<EvalSums> sums(batches);
  internal::parallel_for(batches, threads, [&](std::size_t i) {
    const auto slice = examples.subspan(i * kEvalBatch,
                                        std::min(kEvalBatch, examples.size() - i * kEvalBatch));
    const Batch batch = encode_batch(slice, model.vocab, &model.registry, model.config);
    const auto probs = forward(model.params, model.config, batch);
    auto& s = sums[i];
    for (std::size_t b = 0; b < batch.batch_size; ++b) {
      for (std::size_t t = 0; t < batch.seq_len; ++t) {
        const std::int32_t y = batch.label(b, t);
        if (!batch.real(b, t) || y == kIgnoreLabel) continue;
        const float* row = &probs[(b * batch.seq_len + t) * K];
        s.loss -= std::log(static_cast<double>(row[y]));
        s.correct += argmax(row, K) == static_cast<std::size_t>(y);
        ++s.tokens;
      }
    }
  });
  EvalSums total;
  for (const auto& s : sums) {
    total.loss += s.loss;
    total.correct += s.correct;
    total.tokens += s.tokens;
  }
  LossAccuracy out;
  out.tokens = total.tokens;
  if (total.tokens == 0) {
    out.loss = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.loss = total.loss / static_cast<double>(total.tokens);
  out.accuracy = static_cast<double>(total.correct) / static_cast<double>(total.tokens);
  return out;
}

TrainResult train(const ParallelCorpus& train_set, const ParallelCorpus& val_set,
                  const ModelConfig& config, const TrainConfig& train_config,
                  const ClassRegistry& registry) {
  const Vocab vocab = build_vocabs(train_set, config);
  return train(make_examples(train_set, config.max_seq_len),
               make_examples(val_set, config.max_seq_len), config, train_config, registry, vocab);
}

TrainResult train(const std::vector<Example>& train_examples,
                  const std::vector<Example>& val_examples, const ModelConfig& config,
                  const TrainConfig& train_config, const ClassRegistry& registry,
                  const Vocab& vocab) {
  train_config.validate();
  if (!registry.frozen()) throw DataError("training needs a frozen label registry");
  if (train_examples.empty()) throw DataError("training set is empty");
  const ModelConfig cfg = with_class_count(config, registry);
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  TrainResult result;
  Model& model = result.model;
  model.config = cfg;
  model.vocab = vocab;
  model.registry = registry;
  model.params = init_params<float>(cfg, vocab.word_count(), vocab.char_count(), train_config.seed);

  auto record = [&](std::size_t epoch) {
    const auto tr = evaluate_examples(model, train_examples, train_config.threads);
    const auto va = evaluate_examples(model, val_examples, train_config.threads);
    result.history.push_back({epoch, tr.loss, va.loss, tr.accuracy, va.accuracy});
    if (epoch > 0 && !std::isfinite(tr.loss)) {
      throw NumericError("training loss diverged at epoch " + std::to_string(epoch));
    }
    return tr.accuracy;
  };
  record(0);

  RngStream shuffle_rng(derive_seed({train_config.seed, kShuffleSalt}));
  RngStream dropout_rng(derive_seed({train_config.seed, kDropoutSalt}));
  AdamState<float> adam = make_adam_state(model.params);
  ModelParams<float> grads;
  std::vector<std::size_t> order(train_examples.size());
  std::vector<Example> chunk;
  for (std::size_t epoch = 1; epoch <= train_config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span(order));
    for (std::size_t begin = 0; begin < order.size(); begin += train_config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + train_config.batch_size);
      chunk.clear();
      for (std::size_t i = begin; i < end; ++i) chunk.push_back(train_examples[order[i]]);
      const Batch batch = encode_batch(chunk, model.vocab, &model.registry, cfg);
      Matrix<float> mask;
      const bool use_dropout = cfg.dropout_rate > 0;
      if (use_dropout) {
        mask = draw_dropout_mask<float>(batch.batch_size, cfg.input_dim(), cfg.dropout_rate,
                                        dropout_rng);
      }
      bool any_label = false;
      for (std::int32_t y : batch.labels) any_label |= y != kIgnoreLabel;
      if (!any_label) continue;
      loss_and_gradients(model.params, cfg, batch, use_dropout ? &mask : nullptr, grads,
                         train_config.threads);
      adam_step(model.params, grads, adam, train_config.adam);
    }
    const double accuracy = record(epoch);
    if (train_config.stop_at_train_accuracy && accuracy >= *train_config.stop_at_train_accuracy) {
      break;
    }
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<std::vector<LabelClass>> predict_all(const Model& model,
                                                 std::span<const std::vector<std::string>> sentences,
                                                 std::size_t batch_size) {
  if (batch_size == 0) batch_size = 1;
  const std::size_t window = model.config.max_seq_len;
  const std::size_t K = model.registry.size();

  struct Piece {
    std::size_t sentence;
    std::size_t offset;
  };
  std::vector<Example> windows;
  std::vector<Piece> pieces;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto& words = sentences[s];
    for (std::size_t off = 0; off < words.size(); off += window) {
      const auto stop = std::min(words.size(), off + window);
      windows.push_back({std::vector<std::string>(words.begin() + static_cast<std::ptrdiff_t>(off),
                                                  words.begin() + static_cast<std::ptrdiff_t>(stop)),
                         {}});
      pieces.push_back({s, off});
    }
  }

  std::vector<std::vector<LabelClass>> out(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) out[s].resize(sentences[s].size());
  for (std::size_t begin = 0; begin < windows.size(); begin += batch_size) {
    const std::size_t end = std::min(windows.size(), begin + batch_size);
    const Batch batch = encode_batch(std::span(windows).subspan(begin, end - begin), model.vocab,
                                     nullptr, model.config);
    const auto probs = forward(model.params, model.config, batch);
    for (std::size_t b = 0; b < batch.batch_size; ++b) {
      const Piece& piece = pieces[begin + b];
      for (std::size_t t = 0, n = batch.length(b); t < n; ++t) {
        const float* row = &probs[(b * batch.seq_len + t) * K];
        out[piece.sentence][piece.offset + t] = model.registry.at(argmax(row, K));
      }
    }
  }
  return out;
}

std::vector<LabelClass> predict(const Model& model, std::span<const std::string> sentence) {
  const std::vector<std::vector<std::string>> one{
      std::vector<std::string>(sentence.begin(), sentence.end())};
  return std::move(predict_all(model, one).front());
}

}  // namespace ptypo
