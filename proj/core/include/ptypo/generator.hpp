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

// Corpus corruption: pick a fraction of token occurrences, apply up to
// `max_errors` successful random edits to each, label every token with the
// multiset of edits that took effect, then clean up degenerate outputs.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ptypo/corpus.hpp"
#include "ptypo/error_modules.hpp"
#include "ptypo/labels.hpp"
#include "ptypo/resources.hpp"

namespace ptypo {

struct GeneratorConfig {
  double fraction = 0.25;        // share of token occurrences corrupted
  std::size_t max_errors = 2;    // cap on successful edits per word
  std::uint64_t seed = 0;
  std::vector<ErrorTag> enabled_tags{all_error_tags().begin(), all_error_tags().end()};
  unsigned threads = 1;

  // Throws DataError.
  void validate() const;
};

struct FilterCounts {
  std::size_t empty = 0;
  std::size_t recurrent = 0;
  std::size_t identical = 0;

  std::size_t total() const { return empty + recurrent + identical; }
  FilterCounts& operator+=(const FilterCounts& o);
  bool operator==(const FilterCounts&) const = default;
};

struct GenerationReport {
  std::size_t token_count = 0;
  std::size_t candidate_count = 0;
  std::size_t raw_changed_count = 0;  // candidates with >= 1 successful edit, pre-filter
  std::size_t unchanged_count = 0;
  std::size_t changed_count = 0;
  std::size_t one_error_count = 0;
  std::size_t two_error_count = 0;
  std::size_t more_error_count = 0;  // only non-zero when max_errors > 2
  FilterCounts filtered;

  GenerationReport& operator+=(const GenerationReport& o);
  bool operator==(const GenerationReport&) const = default;

  std::string to_key_values() const;
  std::string to_json() const;
};

struct CorruptedWord {
  std::u32string misspelt;
  std::vector<ErrorTag> tags;  // in application order
};

// Draws an attempt count j in [1, length(word)], then makes j attempts,
// each applying a uniformly drawn enabled module to the current string.
// An attempt succeeds when the module changes the string; stops after
// `max_errors` successes.
CorruptedWord corrupt_word(std::u32string_view word, std::size_t max_errors, RngStream& rng,
                           std::span<const ErrorTag> modules, const Resources& res);

// Flat token positions (corpus order) of the round(fraction * N) tokens with
// the smallest seeded priority keys. Sets for a fixed seed are nested in
// `fraction`. Returned sorted.
std::vector<std::size_t> select_candidates(const Corpus& corpus, double fraction,
                                           std::uint64_t seed);

// Seed of the stream used to corrupt one token occurrence.
std::uint64_t token_stream_seed(std::uint64_t seed, std::uint64_t sentence_id,
                                std::uint32_t row);

// Relabels to N/A (misspelt = word): empty misspellings, misspellings equal
// to the original word, and later tokens whose misspelling repeats an earlier
// non-N/A misspelling under a different label.
FilterCounts post_filter(ParallelCorpus& corpus);

std::pair<ParallelCorpus, GenerationReport> generate(const Corpus& corpus,
                                                     const GeneratorConfig& config,
                                                     const Resources& res);

}  // namespace ptypo
