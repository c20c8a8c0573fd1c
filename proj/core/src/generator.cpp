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

#include "ptypo/generator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "parallel.hpp"

#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

constexpr std::uint64_t kCandidateSalt = 0x63616e646964ULL;
constexpr std::uint64_t kTokenSalt = 0x746f6b656eULL;

void relabel_na(LabeledToken& t) {
  t.misspelt = t.base.word;
  t.label = LabelClass::na();
}

// Corrupts the candidate tokens of sentences [begin, end).
std::size_t corrupt_range(ParallelCorpus& out, const std::vector<std::uint8_t>& is_candidate,
                          const std::vector<std::size_t>& first_flat, std::size_t begin,
                          std::size_t end, const GeneratorConfig& config, const Resources& res) {
  std::size_t raw_changed = 0;
  for (std::size_t s = begin; s < end; ++s) {
    auto& sentence = out.sentences[s];
    for (std::size_t k = 0; k < sentence.tokens.size(); ++k) {
      if (!is_candidate[first_flat[s] + k]) continue;
      LabeledToken& token = sentence.tokens[k];
      RngStream rng(token_stream_seed(config.seed, token.base.sentence_id, token.base.row));
      CorruptedWord cw = corrupt_word(text::decode_utf8(token.base.word), config.max_errors, rng,
                                      config.enabled_tags, res);
      if (!cw.tags.empty()) ++raw_changed;
      token.misspelt = text::encode_utf8(cw.misspelt);
      token.label = canonical_label(cw.tags, config.max_errors);
    }
  }
  return raw_changed;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw DataError("s (fraction) must lie in [0, 1]");
  }
  if (max_errors < 1) throw DataError("m (max errors per word) must be at least 1");
  if (threads < 1) throw DataError("threads must be at least 1");
  if (enabled_tags.empty()) throw DataError("at least one error type must be enabled");
}

FilterCounts& FilterCounts::operator+=(const FilterCounts& o) {
  empty += o.empty;
  recurrent += o.recurrent;
  identical += o.identical;
  return *this;
}

GenerationReport& GenerationReport::operator+=(const GenerationReport& o) {
  token_count += o.token_count;
  candidate_count += o.candidate_count;
  raw_changed_count += o.raw_changed_count;
  unchanged_count += o.unchanged_count;
  changed_count += o.changed_count;
  one_error_count += o.one_error_count;
  two_error_count += o.two_error_count;
  more_error_count += o.more_error_count;
  filtered += o.filtered;
  return *this;
}

std::string GenerationReport::to_key_values() const {
  std::string out;
  auto kv = [&out](std::string_view key, std::size_t value) {
    out += key;
    out += '=';
    out += std::to_string(value);
    out += '\n';
  };
  kv("tokens", token_count);
  kv("candidates", candidate_count);
  kv("raw_changed", raw_changed_count);
  kv("unchanged", unchanged_count);
  kv("changed", changed_count);
  kv("one_error", one_error_count);
  kv("two_errors", two_error_count);
  kv("more_errors", more_error_count);
  kv("filtered_empty", filtered.empty);
  kv("filtered_recurrent", filtered.recurrent);
  kv("filtered_identical", filtered.identical);
  return out;
}

std::string GenerationReport::to_json() const {
  nlohmann::ordered_json j;
  j["tokens"] = token_count;
  j["candidates"] = candidate_count;
  j["raw_changed"] = raw_changed_count;
  j["unchanged"] = unchanged_count;
  j["changed"] = changed_count;
  j["one_error"] = one_error_count;
  j["two_errors"] = two_error_count;
  j["more_errors"] = more_error_count;
  j["filtered"] = {{"empty", filtered.empty},
                   {"recurrent", filtered.recurrent},
                   {"identical", filtered.identical}};
  return j.dump(2) + "\n";
}

CorruptedWord corrupt_word(std::u32string_view word, std::size_t max_errors, RngStream& rng,
                           std::span<const ErrorTag> modules, const Resources& res) {
  CorruptedWord result{std::u32string(word), {}};
  if (word.empty() || modules.empty() || max_errors == 0) return result;
  const auto attempts = static_cast<std::size_t>(
      rng.uniform(1, static_cast<std::int64_t>(word.size()) + 1));
  for (std::size_t a = 0; a < attempts; ++a) {
    const ErrorTag tag = modules[rng.index(modules.size())];
    ApplyOutcome outcome = apply_error(tag, result.misspelt, rng, res);
    if (!outcome.applied() || *outcome.word == result.misspelt) continue;
    result.misspelt = std::move(*outcome.word);
    result.tags.push_back(tag);
    if (result.tags.size() == max_errors) break;
  }
  return result;
}

std::uint64_t token_stream_seed(std::uint64_t seed, std::uint64_t sentence_id, std::uint32_t row) {
  return derive_seed({seed, kTokenSalt, sentence_id, row});
}

std::vector<std::size_t> select_candidates(const Corpus& corpus, double fraction,
                                           std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DataError("fraction must lie in [0, 1]");
  struct Keyed {
    std::uint64_t key;
    std::size_t pos;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(corpus.token_count());
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      keyed.push_back({derive_seed({seed, kCandidateSalt, t.sentence_id, t.row}), keyed.size()});
    }
  }
  const auto count = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(keyed.size())));
  auto by_key = [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key < b.key : a.pos < b.pos;
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(count), keyed.end(),
                    by_key);
  std::vector<std::size_t> positions;
  positions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) positions.push_back(keyed[i].pos);
  std::sort(positions.begin(), positions.end());
  return positions;
}

FilterCounts post_filter(ParallelCorpus& corpus) {
  FilterCounts counts;
  for (auto& s : corpus.sentences) {
    for (auto& t : s.tokens) {
      if (t.label.is_na()) continue;
      if (t.misspelt.empty()) {
        relabel_na(t);
        ++counts.empty;
      } else if (t.misspelt == t.base.word) {
        relabel_na(t);
        ++counts.recurrent;
      }
    }
  }
  // The first labelled occurrence of a misspelling fixes its label.
  std::unordered_map<std::string, LabelClass> first_label;
  for (auto& s : corpus.sentences) {
    for (auto& t : s.tokens) {
      if (t.label.is_na()) continue;
      auto [it, inserted] = first_label.try_emplace(t.misspelt, t.label);
      if (!inserted && it->second != t.label) {
        relabel_na(t);
        ++counts.identical;
      }
    }
  }
  return counts;
}

std::pair<ParallelCorpus, GenerationReport> generate(const Corpus& corpus,
                                                     const GeneratorConfig& config,
                                                     const Resources& res) {
  config.validate();
  GenerationReport report;
  report.token_count = corpus.token_count();

  std::vector<std::uint8_t> is_candidate(report.token_count, 0);
  for (std::size_t pos : select_candidates(corpus, config.fraction, config.seed)) {
    is_candidate[pos] = 1;
  }
  report.candidate_count = static_cast<std::size_t>(
      std::count(is_candidate.begin(), is_candidate.end(), std::uint8_t{1}));

  std::vector<std::size_t> first_flat(corpus.sentences.size());
  for (std::size_t s = 0, flat = 0; s < corpus.sentences.size(); ++s) {
    first_flat[s] = flat;
    flat += corpus.sentences[s].tokens.size();
  }

  ParallelCorpus out = unlabeled(corpus);
  const std::size_t n = out.sentences.size();
  // Each token draws from its own seeded stream, so the chunking only
  // affects scheduling.
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(64, n));
  std::vector<std::size_t> raw(chunks, 0);
  internal::parallel_for(chunks, config.threads, [&](std::size_t c) {
    raw[c] = corrupt_range(out, is_candidate, first_flat, n * c / chunks, n * (c + 1) / chunks,
                           config, res);
  });
  for (std::size_t r : raw) report.raw_changed_count += r;

  report.filtered = post_filter(out);
  for (const auto& s : out.sentences) {
    for (const auto& t : s.tokens) {
      if (t.label.is_na()) {
        ++report.unchanged_count;
        continue;
      }
      ++report.changed_count;
      if (t.label.size() == 1) {
        ++report.one_error_count;
      } else if (t.label.size() == 2) {
        ++report.two_error_count;
      } else {
        ++report.more_error_count;
      }
    }
  }
  return {std::move(out), report};
}

}  // namespace ptypo
