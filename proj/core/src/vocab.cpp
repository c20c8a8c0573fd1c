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

#include "ptypo/vocab.hpp"

#include <algorithm>
#include <map>

#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

// Descending count, then ascending key.
template <typename Key>
std::vector<Key> rank_by_frequency(const std::map<Key, std::size_t>& counts, std::size_t min_count,
                                   std::size_t cap) {
  std::vector<std::pair<Key, std::size_t>> entries;
  for (const auto& [key, count] : counts) {
    if (count >= min_count) entries.emplace_back(key, count);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<Key> out;
  for (std::size_t i = 0; i < entries.size() && out.size() < cap; ++i) out.push_back(entries[i].first);
  return out;
}

}  // namespace

void ModelConfig::validate() const {
  if (max_seq_len == 0 || max_word_chars == 0 || word_emb_dim == 0 || char_emb_dim == 0 ||
      lstm_hidden == 0 || lstm_layers == 0) {
    throw DataError("model dimensions must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw DataError("dropout rate must lie in [0, 1)");
  }
  if (num_classes == 0) throw DataError("model needs at least one class");
  if (max_word_vocab < 2 || max_char_vocab < 2) {
    throw DataError("vocabulary caps must leave room for PAD and UNK");
  }
}

Vocab::Vocab() : Vocab(std::vector<std::string>{}, std::u32string{}) {}

Vocab::Vocab(std::vector<std::string> words, std::u32string chars) {
  words_ = {"<pad>", "<unk>"};
  chars_ = {0, 0};
  for (auto& w : words) {
    if (!word_index_.emplace(w, static_cast<std::int32_t>(words_.size())).second) {
      throw DataError("duplicate vocabulary word '" + w + "'");
    }
    words_.push_back(std::move(w));
  }
  for (char32_t c : chars) {
    if (!char_index_.emplace(c, static_cast<std::int32_t>(chars_.size())).second) {
      throw DataError("duplicate vocabulary character");
    }
    chars_.push_back(c);
  }
}

std::int32_t Vocab::word_index(std::string_view word) const {
  auto it = word_index_.find(std::string(word));
  return it == word_index_.end() ? kUnk : it->second;
}

std::int32_t Vocab::char_index(char32_t ch) const {
  auto it = char_index_.find(ch);
  return it == char_index_.end() ? kUnk : it->second;
}

Vocab build_vocabs(std::span<const std::vector<std::string>> sentences, const ModelConfig& config) {
  // std::map orders UTF-8 strings by code point, which gives the tie-break.
  std::map<std::string, std::size_t> word_counts;
  std::map<char32_t, std::size_t> char_counts;
  for (const auto& sentence : sentences) {
    for (const auto& word : sentence) {
      ++word_counts[word];
      for (char32_t c : text::decode_utf8(word)) ++char_counts[c];
    }
  }
  if (word_counts.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  auto words = rank_by_frequency(word_counts, std::max<std::size_t>(1, config.min_word_freq),
                                 config.max_word_vocab - 2);
  auto chars = rank_by_frequency(char_counts, 1, config.max_char_vocab - 2);
  return Vocab(std::move(words), std::u32string(chars.begin(), chars.end()));
}

Vocab build_vocabs(const ParallelCorpus& train, const ModelConfig& config) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& s : train.sentences) {
    std::vector<std::string> words;
    for (const auto& t : s.tokens) words.push_back(t.misspelt);
    sentences.push_back(std::move(words));
  }
  return build_vocabs(sentences, config);
}

std::vector<Example> make_examples(const ParallelCorpus& corpus, std::size_t window) {
  std::vector<Example> out;
  for (const auto& s : corpus.sentences) {
    for (std::size_t begin = 0; begin < s.tokens.size(); begin += window) {
      Example ex;
      const std::size_t end = std::min(s.tokens.size(), begin + window);
      for (std::size_t k = begin; k < end; ++k) {
        ex.words.push_back(s.tokens[k].misspelt);
        ex.labels.push_back(s.tokens[k].label);
      }
      out.push_back(std::move(ex));
    }
  }
  return out;
}

std::size_t Batch::length(std::size_t b) const {
  std::size_t n = 0;
  while (n < seq_len && real(b, n)) ++n;
  return n;
}

std::size_t Batch::real_tokens() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

Batch encode_batch(std::span<const Example> examples, const Vocab& vocab,
                   const ClassRegistry* registry, const ModelConfig& config) {
  if (registry != nullptr && !registry->frozen()) {
    throw DataError("labels can only be encoded against a frozen registry");
  }
  Batch batch;
  batch.batch_size = examples.size();
  batch.seq_len = config.max_seq_len;
  batch.word_len = config.max_word_chars;
  const std::size_t cells = batch.batch_size * batch.seq_len;
  batch.words.assign(cells, Vocab::kPad);
  batch.chars.assign(cells * batch.word_len, Vocab::kPad);
  batch.labels.assign(cells, kIgnoreLabel);
  batch.mask.assign(cells, 0);
  for (std::size_t b = 0; b < examples.size(); ++b) {
    const Example& ex = examples[b];
    const std::size_t n = std::min(ex.words.size(), batch.seq_len);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t cell = b * batch.seq_len + t;
      batch.words[cell] = vocab.word_index(ex.words[t]);
      batch.mask[cell] = 1;
      const std::u32string chars = text::decode_utf8(ex.words[t]);
      for (std::size_t k = 0; k < std::min(chars.size(), batch.word_len); ++k) {
        batch.chars[cell * batch.word_len + k] = vocab.char_index(chars[k]);
      }
      if (registry != nullptr && !ex.labels.empty()) {
        batch.labels[cell] = static_cast<std::int32_t>(registry->index_of(ex.labels.at(t)));
      }
    }
  }
  return batch;
}

}  // namespace ptypo
