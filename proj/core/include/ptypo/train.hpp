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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptypo/labels.hpp"
#include "ptypo/model.hpp"
#include "ptypo/vocab.hpp"

namespace ptypo {

struct TrainConfig {
  std::size_t epochs = 30;
  std::size_t batch_size = 256;
  AdamConfig adam;  // learning rate 2e-5 by default
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Stop once the infer-mode training accuracy reaches this value.
  std::optional<double> stop_at_train_accuracy;

  // Throws DataError.
  void validate() const;
};

// A trained detector with everything needed to run it.
struct Model {
  ModelConfig config;
  Vocab vocab;
  ClassRegistry registry;
  ModelParams<float> params;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 0 is the evaluation before any update
  double train_loss = 0;
  double val_loss = 0;
  double train_accuracy = 0;
  double val_accuracy = 0;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainResult {
  Model model;
  std::vector<EpochRecord> history;
  double seconds = 0;
};

// "epoch\ttrain_loss\tval_loss\ttrain_acc\tval_acc" plus one line per record.
std::string format_history(std::span<const EpochRecord> history);

struct LossAccuracy {
  double loss = 0;  // NaN when there are no labelled tokens
  double accuracy = 0;
  std::size_t tokens = 0;
};

LossAccuracy evaluate_examples(const Model& model, std::span<const Example> examples,
                               unsigned threads = 1);

// `registry` must be frozen and cover every label of train and val.
// The vocabulary is built from the training split.
TrainResult train(const ParallelCorpus& train_set, const ParallelCorpus& val_set,
                  const ModelConfig& config, const TrainConfig& train_config,
                  const ClassRegistry& registry);

// Same, with a caller-built vocabulary.
TrainResult train(const std::vector<Example>& train_examples,
                  const std::vector<Example>& val_examples, const ModelConfig& config,
                  const TrainConfig& train_config, const ClassRegistry& registry,
                  const Vocab& vocab);

// Arg-max class per token; long sentences run in max_seq_len windows.
std::vector<LabelClass> predict(const Model& model, std::span<const std::string> sentence);

// Batched variant for many sentences.
std::vector<std::vector<LabelClass>> predict_all(const Model& model,
                                                 std::span<const std::vector<std::string>> sentences,
                                                 std::size_t batch_size = 256);

}  // namespace ptypo
