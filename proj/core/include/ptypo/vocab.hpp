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

// Word and character vocabularies and padded batch tensors.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ptypo/corpus.hpp"
#include "ptypo/labels.hpp"

namespace ptypo {

struct ModelConfig {
  std::size_t max_seq_len = 30;
  std::size_t max_word_chars = 16;
  std::size_t word_emb_dim = 64;
  std::size_t char_emb_dim = 32;
  std::size_t lstm_hidden = 128;  // per direction
  std::size_t lstm_layers = 2;
  double dropout_rate = 0.3;
  std::size_t num_classes = 0;
  // Vocabulary caps. Words seen fewer than min_word_freq times in training
  // map to UNK so that the UNK row is trained.
  std::size_t max_word_vocab = 50000;
  std::size_t min_word_freq = 2;
  std::size_t max_char_vocab = 1000;

  std::size_t input_dim() const { return word_emb_dim + char_emb_dim; }

  // Throws DataError.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

class Vocab {
 public:
  static constexpr std::int32_t kPad = 0;
  static constexpr std::int32_t kUnk = 1;

  Vocab();

  // Builds from explicit entries (index order, reserved slots excluded).
  Vocab(std::vector<std::string> words, std::u32string chars);

  std::int32_t word_index(std::string_view word) const;
  std::int32_t char_index(char32_t ch) const;

  std::size_t word_count() const { return words_.size(); }
  std::size_t char_count() const { return chars_.size(); }

  // Entries past the reserved PAD/UNK slots, in index order.
  std::span<const std::string> words() const { return std::span(words_).subspan(2); }
  std::u32string_view chars() const { return std::u32string_view(chars_).substr(2); }

  bool operator==(const Vocab& o) const { return words_ == o.words_ && chars_ == o.chars_; }

 private:
  std::vector<std::string> words_;
  std::u32string chars_;
  std::unordered_map<std::string, std::int32_t> word_index_;
  std::unordered_map<char32_t, std::int32_t> char_index_;
};

// Indexes words and characters by descending frequency, ties by code point
// order. Throws DataError on an empty corpus.
Vocab build_vocabs(std::span<const std::vector<std::string>> sentences,
                   const ModelConfig& config);
Vocab build_vocabs(const ParallelCorpus& train, const ModelConfig& config);

// Detector input: misspelt words and, when known, their gold labels.
struct Example {
  std::vector<std::string> words;
  std::vector<LabelClass> labels;  // empty for unlabeled input
};

// One example per sentence, cut into contiguous windows of at most
// `window` tokens.
std::vector<Example> make_examples(const ParallelCorpus& corpus, std::size_t window);

inline constexpr std::int32_t kIgnoreLabel = -1;

struct Batch {
  std::size_t batch_size = 0;
  std::size_t seq_len = 0;
  std::size_t word_len = 0;
  std::vector<std::int32_t> words;   // B x T
  std::vector<std::int32_t> chars;   // B x T x C
  std::vector<std::int32_t> labels;  // B x T, kIgnoreLabel where unused
  std::vector<std::uint8_t> mask;    // B x T

  std::int32_t word(std::size_t b, std::size_t t) const { return words[b * seq_len + t]; }
  std::int32_t ch(std::size_t b, std::size_t t, std::size_t k) const {
    return chars[(b * seq_len + t) * word_len + k];
  }
  std::int32_t label(std::size_t b, std::size_t t) const { return labels[b * seq_len + t]; }
  bool real(std::size_t b, std::size_t t) const { return mask[b * seq_len + t] != 0; }
  // Number of leading real tokens of sample b.
  std::size_t length(std::size_t b) const;
  std::size_t real_tokens() const;
};

// Truncates to max_seq_len tokens and max_word_chars characters, pads the
// rest. Labelled examples need a frozen registry; unseen labels throw
// DataError. Pass registry == nullptr for unlabeled input.
Batch encode_batch(std::span<const Example> examples, const Vocab& vocab,
                   const ClassRegistry* registry, const ModelConfig& config);

}  // namespace ptypo
