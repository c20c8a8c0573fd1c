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

#include "ptypo/model.hpp"

#include <cmath>

#include "parallel.hpp"
#include "ptypo/errors.hpp"

namespace ptypo {
namespace {

template <typename S>
using ColMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Partial gradients are summed in this fixed chunk order whatever the
// thread count.
constexpr std::size_t kGradientChunks = 8;

constexpr std::size_t dir_index(Direction d) { return static_cast<std::size_t>(d); }
constexpr Direction kDirections[2] = {Direction::kForward, Direction::kBackward};

template <typename S>
S sigmoid(S x) {
  return S(1) / (S(1) + std::exp(-x));
}

template <typename S>
struct DirectionCache {
  ColMatrix<S> gates;      // 4H x n, activated [i, f, g, o]
  ColMatrix<S> cell;       // H x n
  ColMatrix<S> cell_tanh;  // H x n
  ColMatrix<S> hidden;     // H x n
};

template <typename S>
struct SequenceCache {
  std::size_t length = 0;
  ColMatrix<S> input;  // D0 x n, after dropout
  std::vector<std::array<DirectionCache<S>, 2>> layers;
  ColMatrix<S> probs;  // K x n
};

// Runs one sample through the network, keeping every activation. Only the
// sample's real tokens are visited, so padding never influences the result.
template <typename S>
void run_sequence(const ModelParams<S>& params, const ModelConfig& config, const Batch& batch,
                  std::size_t b, const Matrix<S>* dropout_mask, SequenceCache<S>& cache) {
  const std::size_t n = batch.length(b);
  const std::size_t dw = config.word_emb_dim;
  const std::size_t dc = config.char_emb_dim;
  const std::size_t H = config.lstm_hidden;
  const std::size_t K = params.dense_b().rows();
  const auto& word_emb = params.word_embedding();
  const auto& char_emb = params.char_embedding();

  cache.length = n;
  cache.input.resize(static_cast<Eigen::Index>(dw + dc), static_cast<Eigen::Index>(n));
  Vec<S> char_sum(dc);
  for (std::size_t t = 0; t < n; ++t) {
    auto col = cache.input.col(static_cast<Eigen::Index>(t));
    col.head(dw) = word_emb.row(batch.word(b, t)).transpose();
    char_sum.setZero();
    std::size_t count = 0;
    for (std::size_t k = 0; k < batch.word_len; ++k) {
      const std::int32_t c = batch.ch(b, t, k);
      if (c == Vocab::kPad) continue;
      char_sum += char_emb.row(c).transpose();
      ++count;
    }
    if (count > 0) {
      col.tail(dc) = char_sum / static_cast<S>(count);
    } else {
      col.tail(dc).setZero();
    }
    if (dropout_mask != nullptr) {
      col.array() *= dropout_mask->row(static_cast<Eigen::Index>(b)).transpose().array();
    }
  }

  cache.layers.resize(params.layers());
  Vec<S> in_a, in_b, p_in, p_b, p_rec, z(4 * H), h_prev(H), c_prev(H);
  for (std::size_t l = 0; l < params.layers(); ++l) {
    for (Direction d : kDirections) {
      auto& dcache = cache.layers[l][dir_index(d)];
      dcache.gates.resize(4 * H, n);
      dcache.cell.resize(H, n);
      dcache.cell_tanh.resize(H, n);
      dcache.hidden.resize(H, n);
      const auto& w_rec = params.w_rec(l, d);
      const auto bias = params.bias(l, d).col(0);
      h_prev.setZero();
      c_prev.setZero();
      for (std::size_t s = 0; s < n; ++s) {
        const auto t = static_cast<Eigen::Index>(d == Direction::kForward ? s : n - 1 - s);
        // Inputs are copied into owned vectors so every product runs on
        // identically aligned operands.
        if (l == 0) {
          in_a = cache.input.col(t);
          p_in.noalias() = params.w_in(0, d, 0) * in_a;
        } else {
          const auto& below = cache.layers[l - 1];
          in_a = below[0].hidden.col(t);
          in_b = below[1].hidden.col(t);
          p_in.noalias() = params.w_in(l, d, 0) * in_a;
          p_b.noalias() = params.w_in(l, d, 1) * in_b;
          p_in += p_b;
        }
        p_rec.noalias() = w_rec * h_prev;
        z = p_in + p_rec + bias;
        auto gates = dcache.gates.col(t);
        for (std::size_t j = 0; j < H; ++j) {
          gates(j) = sigmoid(z(j));
          gates(H + j) = sigmoid(z(H + j));
          gates(2 * H + j) = std::tanh(z(2 * H + j));
          gates(3 * H + j) = sigmoid(z(3 * H + j));
        }
        auto cell = dcache.cell.col(t);
        cell = gates.segment(H, H).cwiseProduct(c_prev) +
               gates.segment(0, H).cwiseProduct(gates.segment(2 * H, H));
        auto cell_tanh = dcache.cell_tanh.col(t);
        cell_tanh = cell.array().tanh().matrix();
        dcache.hidden.col(t) = gates.segment(3 * H, H).cwiseProduct(cell_tanh);
        h_prev = dcache.hidden.col(t);
        c_prev = cell;
      }
      if (!dcache.hidden.allFinite()) {
        throw NumericError("non-finite activation in lstm layer " + std::to_string(l));
      }
    }
  }

  cache.probs.resize(K, n);
  const auto& top = cache.layers.back();
  const auto dense_b = params.dense_b().col(0);
  Vec<S> logits(K), from_fwd, from_bwd;
  for (std::size_t s = 0; s < n; ++s) {
    const auto t = static_cast<Eigen::Index>(s);
    in_a = top[0].hidden.col(t);
    in_b = top[1].hidden.col(t);
    from_fwd.noalias() = params.dense_w(Direction::kForward) * in_a;
    from_bwd.noalias() = params.dense_w(Direction::kBackward) * in_b;
    logits = from_fwd + from_bwd + dense_b;
    const S max = logits.maxCoeff();
    auto p = cache.probs.col(t);
    p = (logits.array() - max).exp().matrix();
    p /= p.sum();
  }
  if (!cache.probs.allFinite()) throw NumericError("non-finite output in softmax layer");
}

// Accumulates the gradient of sum_t -log p(label_t) * scale into `g`;
// returns the unscaled sum.
template <typename S>
S backprop_sequence(const ModelParams<S>& params, const ModelConfig& config, const Batch& batch,
                    std::size_t b, const Matrix<S>* dropout_mask, S scale, SequenceCache<S>& cache,
                    ModelParams<S>& g) {
  run_sequence(params, config, batch, b, dropout_mask, cache);
  const std::size_t n = cache.length;
  if (n == 0) return S(0);
  const std::size_t dw = config.word_emb_dim;
  const std::size_t dc = config.char_emb_dim;
  const auto H = static_cast<Eigen::Index>(config.lstm_hidden);

  S loss = 0;
  ColMatrix<S> dlogits = cache.probs;
  for (std::size_t t = 0; t < n; ++t) {
    const std::int32_t y = batch.label(b, t);
    const auto col = static_cast<Eigen::Index>(t);
    if (y == kIgnoreLabel) {
      dlogits.col(col).setZero();
      continue;
    }
    loss -= std::log(cache.probs(y, col));
    dlogits(y, col) -= S(1);
  }
  dlogits *= scale;

  const auto& top = cache.layers.back();
  g.dense_w(Direction::kForward).noalias() += dlogits * top[0].hidden.transpose();
  g.dense_w(Direction::kBackward).noalias() += dlogits * top[1].hidden.transpose();
  g.dense_b().col(0) += dlogits.rowwise().sum();

  std::array<ColMatrix<S>, 2> d_hidden;
  d_hidden[0].noalias() = params.dense_w(Direction::kForward).transpose() * dlogits;
  d_hidden[1].noalias() = params.dense_w(Direction::kBackward).transpose() * dlogits;

  ColMatrix<S> d_input = ColMatrix<S>::Zero(static_cast<Eigen::Index>(dw + dc),
                                            static_cast<Eigen::Index>(n));
  ColMatrix<S> dz(4 * H, static_cast<Eigen::Index>(n));
  ColMatrix<S> h_prev_all(H, static_cast<Eigen::Index>(n));
  Vec<S> dh(H), dc_next(H), dh_next(H), dcell(H), c_prev(H), dz_t;

  for (std::size_t l = params.layers(); l-- > 0;) {
    std::array<ColMatrix<S>, 2> d_below;
    if (l > 0) {
      d_below[0] = ColMatrix<S>::Zero(H, static_cast<Eigen::Index>(n));
      d_below[1] = ColMatrix<S>::Zero(H, static_cast<Eigen::Index>(n));
    }
    for (Direction d : kDirections) {
      const auto& dcache = cache.layers[l][dir_index(d)];
      const auto& w_rec = params.w_rec(l, d);
      const bool fwd = d == Direction::kForward;
      dh_next.setZero();
      dc_next.setZero();
      for (std::size_t s = n; s-- > 0;) {
        const auto t = static_cast<Eigen::Index>(fwd ? s : n - 1 - s);
        const auto tp = fwd ? t - 1 : t + 1;  // previous step in processing order
        const auto gates = dcache.gates.col(t);
        const auto i = gates.segment(0, H).array();
        const auto f = gates.segment(H, H).array();
        const auto gg = gates.segment(2 * H, H).array();
        const auto o = gates.segment(3 * H, H).array();
        const auto tc = dcache.cell_tanh.col(t).array();
        if (s > 0) {
          c_prev = dcache.cell.col(tp);
        } else {
          c_prev.setZero();
        }
        dh = d_hidden[dir_index(d)].col(t) + dh_next;
        dcell = (dc_next.array() + dh.array() * o * (S(1) - tc * tc)).matrix();
        auto dzc = dz.col(t);
        dzc.segment(0, H) = (dcell.array() * gg * i * (S(1) - i)).matrix();
        dzc.segment(H, H) = (dcell.array() * c_prev.array() * f * (S(1) - f)).matrix();
        dzc.segment(2 * H, H) = (dcell.array() * i * (S(1) - gg * gg)).matrix();
        dzc.segment(3 * H, H) = (dh.array() * tc * o * (S(1) - o)).matrix();
        dc_next = (dcell.array() * f).matrix();
        dz_t = dzc;
        dh_next.noalias() = w_rec.transpose() * dz_t;
        if (s > 0) {
          h_prev_all.col(t) = dcache.hidden.col(tp);
        } else {
          h_prev_all.col(t).setZero();
        }
      }
      auto& gd = g;
      gd.w_rec(l, d).noalias() += dz * h_prev_all.transpose();
      gd.bias(l, d).col(0) += dz.rowwise().sum();
      if (l == 0) {
        gd.w_in(0, d, 0).noalias() += dz * cache.input.transpose();
        d_input.noalias() += params.w_in(0, d, 0).transpose() * dz;
      } else {
        const auto& below = cache.layers[l - 1];
        gd.w_in(l, d, 0).noalias() += dz * below[0].hidden.transpose();
        gd.w_in(l, d, 1).noalias() += dz * below[1].hidden.transpose();
        d_below[0].noalias() += params.w_in(l, d, 0).transpose() * dz;
        d_below[1].noalias() += params.w_in(l, d, 1).transpose() * dz;
      }
    }
    if (l > 0) d_hidden = std::move(d_below);
  }

  if (dropout_mask != nullptr) {
    d_input.array().colwise() *= dropout_mask->row(static_cast<Eigen::Index>(b)).transpose().array();
  }
  auto& word_grad = g.word_embedding();
  auto& char_grad = g.char_embedding();
  for (std::size_t t = 0; t < n; ++t) {
    const auto col = d_input.col(static_cast<Eigen::Index>(t));
    word_grad.row(batch.word(b, t)) += col.head(dw).transpose();
    std::size_t count = 0;
    for (std::size_t k = 0; k < batch.word_len; ++k) count += batch.ch(b, t, k) != Vocab::kPad;
    if (count == 0) continue;
    const Vec<S> share = col.tail(dc) / static_cast<S>(count);
    for (std::size_t k = 0; k < batch.word_len; ++k) {
      const std::int32_t c = batch.ch(b, t, k);
      if (c != Vocab::kPad) char_grad.row(c) += share.transpose();
    }
  }
  return loss;
}

std::size_t counted_positions(const Batch& batch) {
  std::size_t n = 0;
  for (std::size_t b = 0; b < batch.batch_size; ++b) {
    for (std::size_t t = 0, len = batch.length(b); t < len; ++t) n += batch.label(b, t) != kIgnoreLabel;
  }
  return n;
}

}  // namespace

template <typename S>
ModelParams<S>::ModelParams(const ModelConfig& config, std::size_t word_vocab,
                            std::size_t char_vocab) {
  const auto H = static_cast<Eigen::Index>(config.lstm_hidden);
  const auto D0 = static_cast<Eigen::Index>(config.input_dim());
  const auto K = static_cast<Eigen::Index>(config.num_classes);
  layers_ = config.lstm_layers;
  tensors_.push_back({"word_embedding", Matrix<S>::Zero(static_cast<Eigen::Index>(word_vocab),
                                                        static_cast<Eigen::Index>(config.word_emb_dim))});
  tensors_.push_back({"char_embedding", Matrix<S>::Zero(static_cast<Eigen::Index>(char_vocab),
                                                        static_cast<Eigen::Index>(config.char_emb_dim))});
  for (std::size_t l = 0; l < layers_; ++l) {
    for (const char* dir : {"fwd", "bwd"}) {
      const std::string prefix = "lstm." + std::to_string(l) + "." + dir;
      if (l == 0) {
        tensors_.push_back({prefix + ".w_in", Matrix<S>::Zero(4 * H, D0)});
      } else {
        tensors_.push_back({prefix + ".w_in_from_fwd", Matrix<S>::Zero(4 * H, H)});
        tensors_.push_back({prefix + ".w_in_from_bwd", Matrix<S>::Zero(4 * H, H)});
      }
      tensors_.push_back({prefix + ".w_rec", Matrix<S>::Zero(4 * H, H)});
      tensors_.push_back({prefix + ".bias", Matrix<S>::Zero(4 * H, 1)});
    }
  }
  tensors_.push_back({"dense.w_from_fwd", Matrix<S>::Zero(K, H)});
  tensors_.push_back({"dense.w_from_bwd", Matrix<S>::Zero(K, H)});
  tensors_.push_back({"dense.bias", Matrix<S>::Zero(K, 1)});
}

template <typename S>
std::size_t ModelParams<S>::lstm_base(std::size_t layer, Direction dir) const {
  // Layer 0 holds 3 tensors per direction, deeper layers 4.
  const std::size_t before = layer == 0 ? 0 : 6 + (layer - 1) * 8;
  return 2 + before + dir_index(dir) * (layer == 0 ? 3 : 4);
}

template <typename S>
Matrix<S>& ModelParams<S>::w_in(std::size_t layer, Direction dir, std::size_t block) {
  return tensors_[lstm_base(layer, dir) + block].value;
}
template <typename S>
const Matrix<S>& ModelParams<S>::w_in(std::size_t layer, Direction dir, std::size_t block) const {
  return tensors_[lstm_base(layer, dir) + block].value;
}
template <typename S>
Matrix<S>& ModelParams<S>::w_rec(std::size_t layer, Direction dir) {
  return tensors_[lstm_base(layer, dir) + input_blocks(layer)].value;
}
template <typename S>
const Matrix<S>& ModelParams<S>::w_rec(std::size_t layer, Direction dir) const {
  return tensors_[lstm_base(layer, dir) + input_blocks(layer)].value;
}
template <typename S>
Matrix<S>& ModelParams<S>::bias(std::size_t layer, Direction dir) {
  return tensors_[lstm_base(layer, dir) + input_blocks(layer) + 1].value;
}
template <typename S>
const Matrix<S>& ModelParams<S>::bias(std::size_t layer, Direction dir) const {
  return tensors_[lstm_base(layer, dir) + input_blocks(layer) + 1].value;
}
template <typename S>
Matrix<S>& ModelParams<S>::dense_w(Direction from) {
  return tensors_[tensors_.size() - 3 + dir_index(from)].value;
}
template <typename S>
const Matrix<S>& ModelParams<S>::dense_w(Direction from) const {
  return tensors_[tensors_.size() - 3 + dir_index(from)].value;
}

template <typename S>
std::size_t ModelParams<S>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += static_cast<std::size_t>(t.value.size());
  return n;
}

template <typename S>
void ModelParams<S>::set_zero() {
  for (auto& t : tensors_) t.value.setZero();
}

template <typename S>
bool ModelParams<S>::all_finite() const {
  for (const auto& t : tensors_) {
    if (!t.value.allFinite()) return false;
  }
  return true;
}

template <typename S>
bool ModelParams<S>::operator==(const ModelParams& o) const {
  if (layers_ != o.layers_ || tensors_.size() != o.tensors_.size()) return false;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& a = tensors_[i];
    const auto& b = o.tensors_[i];
    if (a.name != b.name || a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols() ||
        a.value != b.value) {
      return false;
    }
  }
  return true;
}

template <typename S>
ModelParams<S> init_params(const ModelConfig& config, std::size_t word_vocab,
                           std::size_t char_vocab, std::uint64_t seed) {
  config.validate();
  ModelParams<S> p(config, word_vocab, char_vocab);
  RngStream rng(derive_seed({seed, 0x696e6974ULL}));
  auto fill_uniform = [&rng](Matrix<S>& m, double limit) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = static_cast<S>((2.0 * rng.uniform01() - 1.0) * limit);
    }
  };
  auto glorot = [](Eigen::Index fan_in, Eigen::Index fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  };
  const auto H = static_cast<Eigen::Index>(config.lstm_hidden);
  fill_uniform(p.word_embedding(), 0.05);
  fill_uniform(p.char_embedding(), 0.05);
  for (std::size_t l = 0; l < p.layers(); ++l) {
    const Eigen::Index fan_in = l == 0 ? static_cast<Eigen::Index>(config.input_dim()) : 2 * H;
    for (Direction d : kDirections) {
      for (std::size_t blk = 0; blk < p.input_blocks(l); ++blk) {
        fill_uniform(p.w_in(l, d, blk), glorot(fan_in, 4 * H));
      }
      fill_uniform(p.w_rec(l, d), glorot(H, 4 * H));
      p.bias(l, d).setZero();
      p.bias(l, d).middleRows(H, H).setOnes();  // forget gate
    }
  }
  const double dense_limit = glorot(2 * H, static_cast<Eigen::Index>(config.num_classes));
  fill_uniform(p.dense_w(Direction::kForward), dense_limit);
  fill_uniform(p.dense_w(Direction::kBackward), dense_limit);
  p.dense_b().setZero();
  return p;
}

template <typename S>
ModelParams<S> mirror_directions(const ModelParams<S>& params) {
  ModelParams<S> out = params;
  for (std::size_t l = 0; l < params.layers(); ++l) {
    for (Direction d : kDirections) {
      const Direction other = d == Direction::kForward ? Direction::kBackward : Direction::kForward;
      if (l == 0) {
        out.w_in(0, d, 0) = params.w_in(0, other, 0);
      } else {
        // The layer below swapped too, so the input blocks trade places.
        out.w_in(l, d, 0) = params.w_in(l, other, 1);
        out.w_in(l, d, 1) = params.w_in(l, other, 0);
      }
      out.w_rec(l, d) = params.w_rec(l, other);
      out.bias(l, d) = params.bias(l, other);
    }
  }
  out.dense_w(Direction::kForward) = params.dense_w(Direction::kBackward);
  out.dense_w(Direction::kBackward) = params.dense_w(Direction::kForward);
  return out;
}

template <typename S>
Matrix<S> draw_dropout_mask(std::size_t batch, std::size_t channels, double rate,
                            RngStream& rng) {
  Matrix<S> mask(static_cast<Eigen::Index>(batch), static_cast<Eigen::Index>(channels));
  const S keep_scale = static_cast<S>(1.0 / (1.0 - rate));
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.bernoulli(rate) ? S(0) : keep_scale;
  }
  return mask;
}

template <typename S>
std::vector<S> forward(const ModelParams<S>& params, const ModelConfig& config, const Batch& batch,
                       const Matrix<S>* dropout_mask) {
  const std::size_t K = static_cast<std::size_t>(params.dense_b().rows());
  std::vector<S> probs(batch.batch_size * batch.seq_len * K, S(0));
  SequenceCache<S> cache;
  for (std::size_t b = 0; b < batch.batch_size; ++b) {
    run_sequence(params, config, batch, b, dropout_mask, cache);
    for (std::size_t t = 0; t < cache.length; ++t) {
      for (std::size_t k = 0; k < K; ++k) {
        probs[(b * batch.seq_len + t) * K + k] =
            cache.probs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t));
      }
    }
  }
  return probs;
}

template <typename S>
std::vector<S> forward(const ModelParams<S>& params, const ModelConfig& config, const Batch& batch,
                       Mode mode, RngStream& dropout_rng) {
  if (mode == Mode::kTrain && config.dropout_rate > 0) {
    const Matrix<S> mask =
        draw_dropout_mask<S>(batch.batch_size, config.input_dim(), config.dropout_rate, dropout_rng);
    return forward(params, config, batch, &mask);
  }
  return forward(params, config, batch, static_cast<const Matrix<S>*>(nullptr));
}

template <typename S>
S masked_cross_entropy(const std::vector<S>& probs, const Batch& batch, std::size_t classes) {
  S total = 0;
  std::size_t count = 0;
  for (std::size_t b = 0; b < batch.batch_size; ++b) {
    for (std::size_t t = 0; t < batch.seq_len; ++t) {
      if (!batch.real(b, t) || batch.label(b, t) == kIgnoreLabel) continue;
      const std::size_t cell = b * batch.seq_len + t;
      total -= std::log(probs[cell * classes + static_cast<std::size_t>(batch.labels[cell])]);
      ++count;
    }
  }
  if (count == 0) throw DataError("loss over an all-zero mask is undefined");
  return total / static_cast<S>(count);
}

template <typename S>
S loss_and_gradients(const ModelParams<S>& params, const ModelConfig& config, const Batch& batch,
                     const Matrix<S>* dropout_mask, ModelParams<S>& grads, unsigned threads) {
  const std::size_t positions = counted_positions(batch);
  if (positions == 0) throw DataError("loss over an all-zero mask is undefined");
  const S scale = S(1) / static_cast<S>(positions);

  // TODO: keep embedding gradients sparse per chunk; dense copies dominate
  // memory once the word vocabulary reaches the 100k range.
  const std::size_t chunks = std::max<std::size_t>(1, std::min(kGradientChunks, batch.batch_size));
  std::vector<ModelParams<S>> partial(chunks);
  std::vector<S> partial_loss(chunks, S(0));
  internal::parallel_for(chunks, threads, [&](std::size_t c) {
    partial[c] = params;
    partial[c].set_zero();
    SequenceCache<S> cache;
    const std::size_t begin = batch.batch_size * c / chunks;
    const std::size_t end = batch.batch_size * (c + 1) / chunks;
    for (std::size_t b = begin; b < end; ++b) {
      partial_loss[c] += backprop_sequence(params, config, batch, b, dropout_mask, scale, cache, partial[c]);
    }
  });

  grads = std::move(partial[0]);
  S loss = partial_loss[0];
  for (std::size_t c = 1; c < chunks; ++c) {
    for (std::size_t i = 0; i < grads.tensors().size(); ++i) {
      grads.tensors()[i].value += partial[c].tensors()[i].value;
    }
    loss += partial_loss[c];
  }
  for (const auto& t : grads.tensors()) {
    if (!t.value.allFinite()) throw NumericError("non-finite gradient in " + t.name);
  }
  return loss * scale;
}

template <typename S>
void adam_update(S& param, S grad, S& m, S& v, std::size_t t, const AdamConfig& config) {
  const auto b1 = static_cast<S>(config.beta1);
  const auto b2 = static_cast<S>(config.beta2);
  const auto c1 = static_cast<S>(1.0 - std::pow(config.beta1, static_cast<double>(t)));
  const auto c2 = static_cast<S>(1.0 - std::pow(config.beta2, static_cast<double>(t)));
  m = b1 * m + (S(1) - b1) * grad;
  v = b2 * v + (S(1) - b2) * grad * grad;
  const S m_hat = m / c1;
  const S v_hat = v / c2;
  param -= static_cast<S>(config.learning_rate) * m_hat /
           (std::sqrt(v_hat) + static_cast<S>(config.epsilon));
}

template <typename S>
void adam_step(ModelParams<S>& params, const ModelParams<S>& grads, AdamState<S>& state,
               const AdamConfig& config) {
  ++state.step;
  for (std::size_t i = 0; i < params.tensors().size(); ++i) {
    auto& p = params.tensors()[i].value;
    const auto& g = grads.tensors()[i].value;
    auto& m = state.m.tensors()[i].value;
    auto& v = state.v.tensors()[i].value;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      adam_update(p.data()[k], g.data()[k], m.data()[k], v.data()[k], state.step, config);
    }
  }
}

template <typename S>
AdamState<S> make_adam_state(const ModelParams<S>& params) {
  AdamState<S> state{params, params, 0};
  state.m.set_zero();
  state.v.set_zero();
  return state;
}

#define PTYPO_INSTANTIATE(S)                                                                       \
  template class ModelParams<S>;                                                                   \
  template ModelParams<S> init_params<S>(const ModelConfig&, std::size_t, std::size_t,             \
                                         std::uint64_t);                                           \
  template ModelParams<S> mirror_directions<S>(const ModelParams<S>&);                             \
  template Matrix<S> draw_dropout_mask<S>(std::size_t, std::size_t, double, RngStream&);          \
  template std::vector<S> forward<S>(const ModelParams<S>&, const ModelConfig&, const Batch&,      \
                                     const Matrix<S>*);                                            \
  template std::vector<S> forward<S>(const ModelParams<S>&, const ModelConfig&, const Batch&,      \
                                     Mode, RngStream&);                                            \
  template S masked_cross_entropy<S>(const std::vector<S>&, const Batch&, std::size_t);            \
  template S loss_and_gradients<S>(const ModelParams<S>&, const ModelConfig&, const Batch&,        \
                                   const Matrix<S>*, ModelParams<S>&, unsigned);                   \
  template void adam_update<S>(S&, S, S&, S&, std::size_t, const AdamConfig&);                     \
  template void adam_step<S>(ModelParams<S>&, const ModelParams<S>&, AdamState<S>&,                \
                             const AdamConfig&);                                                   \
  template AdamState<S> make_adam_state<S>(const ModelParams<S>&);

PTYPO_INSTANTIATE(float)
PTYPO_INSTANTIATE(double)

#undef PTYPO_INSTANTIATE

}  // namespace ptypo
