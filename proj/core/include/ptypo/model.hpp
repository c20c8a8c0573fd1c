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

// Token classifier: word embedding concatenated with the mean of the word's
// character embeddings, spatial dropout, stacked bidirectional LSTMs and a
// per-token dense softmax. Forward and backward passes are hand-written and
// templated on the scalar type so the gradient check can run in double.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ptypo/rng.hpp"
#include "ptypo/vocab.hpp"

namespace ptypo {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename S>
struct Tensor {
  std::string name;
  Matrix<S> value;
};

enum class Direction : std::size_t { kForward = 0, kBackward = 1 };

// All weights in a fixed order. LSTM gate rows are stacked as
// [input, forget, cell, output]. Layers above the first keep their input
// weights as two blocks, one per direction of the layer below; the dense
// layer likewise. Tensor order:
//   word_embedding, char_embedding,
//   per layer, per direction: input block(s), w_rec, bias,
//   dense.w_from_fwd, dense.w_from_bwd, dense.bias
template <typename S>
class ModelParams {
 public:
  ModelParams() = default;
  // Zero-filled tensors of the right shapes.
  ModelParams(const ModelConfig& config, std::size_t word_vocab, std::size_t char_vocab);

  std::vector<Tensor<S>>& tensors() { return tensors_; }
  const std::vector<Tensor<S>>& tensors() const { return tensors_; }
  std::size_t layers() const { return layers_; }

  Matrix<S>& word_embedding() { return tensors_[0].value; }
  const Matrix<S>& word_embedding() const { return tensors_[0].value; }
  Matrix<S>& char_embedding() { return tensors_[1].value; }
  const Matrix<S>& char_embedding() const { return tensors_[1].value; }

  // block 0 = input (layer 0) or from-forward input; block 1 = from-backward.
  std::size_t input_blocks(std::size_t layer) const { return layer == 0 ? 1 : 2; }
  Matrix<S>& w_in(std::size_t layer, Direction dir, std::size_t block);
  const Matrix<S>& w_in(std::size_t layer, Direction dir, std::size_t block) const;
  Matrix<S>& w_rec(std::size_t layer, Direction dir);
  const Matrix<S>& w_rec(std::size_t layer, Direction dir) const;
  Matrix<S>& bias(std::size_t layer, Direction dir);  // 4H x 1
  const Matrix<S>& bias(std::size_t layer, Direction dir) const;

  Matrix<S>& dense_w(Direction from);  // K x H
  const Matrix<S>& dense_w(Direction from) const;
  Matrix<S>& dense_b() { return tensors_.back().value; }  // K x 1
  const Matrix<S>& dense_b() const { return tensors_.back().value; }

  std::size_t parameter_count() const;
  void set_zero();
  bool all_finite() const;

  template <typename T>
  ModelParams<T> cast() const {
    ModelParams<T> out;
    out.layers_ = layers_;
    for (const auto& t : tensors_) out.tensors_.push_back({t.name, t.value.template cast<T>()});
    return out;
  }

  bool operator==(const ModelParams& o) const;

 private:
  template <typename>
  friend class ModelParams;

  std::size_t lstm_base(std::size_t layer, Direction dir) const;

  std::vector<Tensor<S>> tensors_;
  std::size_t layers_ = 0;
};

// Embeddings uniform in [-0.05, 0.05]; LSTM and dense weights Glorot-uniform;
// forget-gate bias 1, other biases 0.
template <typename S>
ModelParams<S> init_params(const ModelConfig& config, std::size_t word_vocab,
                           std::size_t char_vocab, std::uint64_t seed);

// Swaps the forward and backward LSTM of every layer and the matching
// input and dense blocks. Running the result on a reversed sentence yields
// the reversed outputs of the original.
template <typename S>
ModelParams<S> mirror_directions(const ModelParams<S>& params);

// Per-(sample, channel) keep mask broadcast over time; entries are 0 or
// 1 / (1 - rate). Shape B x input_dim.
template <typename S>
Matrix<S> draw_dropout_mask(std::size_t batch, std::size_t channels, double rate,
                            RngStream& rng);

// Probabilities, B x T x K flat; rows of padded positions are zero.
template <typename S>
std::vector<S> forward(const ModelParams<S>& params, const ModelConfig& config,
                       const Batch& batch, const Matrix<S>* dropout_mask = nullptr);

// Same as forward, but samples dropout in train mode.
enum class Mode { kTrain, kInfer };
template <typename S>
std::vector<S> forward(const ModelParams<S>& params, const ModelConfig& config,
                       const Batch& batch, Mode mode, RngStream& dropout_rng);

// Mean of -log p(label) over positions with mask 1 and a label.
// Throws DataError when no position counts.
template <typename S>
S masked_cross_entropy(const std::vector<S>& probs, const Batch& batch, std::size_t classes);

// Loss and its exact gradient (written into `grads`, which is resized and
// overwritten). Work is split into a fixed number of sample chunks whose
// partial gradients are summed in chunk order, so the result does not
// depend on `threads`. Throws NumericError on non-finite values.
template <typename S>
S loss_and_gradients(const ModelParams<S>& params, const ModelConfig& config,
                     const Batch& batch, const Matrix<S>* dropout_mask, ModelParams<S>& grads,
                     unsigned threads = 1);

template <typename S>
struct AdamState {
  ModelParams<S> m;
  ModelParams<S> v;
  std::size_t step = 0;
};

struct AdamConfig {
  double learning_rate = 2e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update for a single coordinate at step t >= 1.
template <typename S>
void adam_update(S& param, S grad, S& m, S& v, std::size_t t, const AdamConfig& config);

// Increments state.step then updates every coordinate.
template <typename S>
void adam_step(ModelParams<S>& params, const ModelParams<S>& grads, AdamState<S>& state,
               const AdamConfig& config);

template <typename S>
AdamState<S> make_adam_state(const ModelParams<S>& params);

}  // namespace ptypo
