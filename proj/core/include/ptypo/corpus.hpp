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

// POS-tagged corpora and the parallel (word, misspelt word, typo type)
// dataset, both stored as UTF-8 TSV with a header line.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptypo/labels.hpp"

namespace ptypo {

struct Token {
  std::uint32_t row = 0;  // 1-based position within the sentence
  std::uint64_t sentence_id = 0;
  std::string word;
  std::string pos;
  std::string source;

  bool operator==(const Token&) const = default;
};

struct LabeledToken {
  Token base;
  std::string misspelt;
  LabelClass label;

  bool operator==(const LabeledToken&) const = default;
};

template <typename T>
struct BasicSentence {
  std::uint64_t id = 0;
  std::vector<T> tokens;

  bool operator==(const BasicSentence&) const = default;
};

template <typename T>
struct BasicCorpus {
  std::vector<BasicSentence<T>> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
  }

  bool operator==(const BasicCorpus&) const = default;
};

using Sentence = BasicSentence<Token>;
using Corpus = BasicCorpus<Token>;
using LabeledSentence = BasicSentence<LabeledToken>;
using ParallelCorpus = BasicCorpus<LabeledToken>;

inline constexpr std::string_view kCorpusHeader = "row\tsentence_id\tword\tpos\tsource";
inline constexpr std::string_view kParallelHeader =
    "row\tsentence_id\tword\tpos\tsource\tmisspelt_word\ttypo_type";

// Parsers throw ParseError naming the line for bad column counts, invalid
// UTF-8, non-increasing rows and repeated sentence ids.
Corpus parse_corpus(std::string_view text);
ParallelCorpus parse_parallel(std::string_view text);

std::string format_corpus(const Corpus& corpus);
std::string format_parallel(const ParallelCorpus& corpus);

Corpus load_corpus(const std::filesystem::path& path);
ParallelCorpus load_parallel(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const Corpus& corpus);
void write_parallel(const std::filesystem::path& path, const ParallelCorpus& corpus);

// Original-word view of a parallel corpus.
Corpus originals(const ParallelCorpus& corpus);
// Every token unchanged and labelled N/A.
ParallelCorpus unlabeled(const Corpus& corpus);

struct CorpusStats {
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  std::size_t unique_word_count = 0;
  std::size_t distinct_pos_count = 0;
  std::map<std::size_t, std::size_t> word_length_histogram;  // code points -> count
  std::map<std::string, std::size_t> pos_histogram;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_statistics(const Corpus& corpus);

// Part sizes by largest remainder; each within one of n * ratio.
// Throws DataError for non-positive ratios, a sum off 1 by more than 1e-9,
// or fewer than ratios.size() items.
std::vector<std::size_t> split_sizes(std::size_t n, std::span<const double> ratios);

// Seeded shuffle of [0, n) cut into parts of split_sizes(); each part keeps
// ascending order.
std::vector<std::vector<std::size_t>> split_indices(std::size_t n,
                                                    std::span<const double> ratios,
                                                    std::uint64_t seed);

// Sentence-level split; sentences are never divided.
template <typename T>
std::vector<BasicCorpus<T>> split_corpus(const BasicCorpus<T>& corpus,
                                         std::span<const double> ratios, std::uint64_t seed) {
  std::vector<BasicCorpus<T>> parts;
  for (const auto& idx : split_indices(corpus.sentences.size(), ratios, seed)) {
    BasicCorpus<T> part;
    part.sentences.reserve(idx.size());
    for (std::size_t i : idx) part.sentences.push_back(corpus.sentences[i]);
    parts.push_back(std::move(part));
  }
  return parts;
}

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace ptypo
