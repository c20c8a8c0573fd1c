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

#include "ptypo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <unordered_set>

#include "ptypo/errors.hpp"
#include "ptypo/rng.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view field, std::string_view column, std::size_t line) {
  Int value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("column '" + std::string(column) + "' is not an integer: '" +
                         std::string(field) + "'",
                     line);
  }
  return value;
}

// Shared reader for both TSV schemas. `finish` turns the parsed base token
// and the raw fields into the stored token type.
template <typename T, typename Finish>
BasicCorpus<T> parse_table(std::string_view text, std::string_view header, std::size_t columns,
                           Finish&& finish) {
  BasicCorpus<T> corpus;
  std::unordered_set<std::uint64_t> seen_ids;
  std::uint32_t last_row = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!have_header) {
      if (line != header) throw ParseError("expected header '" + std::string(header) + "'", line_no);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (!text::is_valid_utf8(line)) throw ParseError("invalid UTF-8", line_no);
    auto fields = split_tabs(line);
    if (fields.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Token token;
    token.row = parse_int<std::uint32_t>(fields[0], "row", line_no);
    token.sentence_id = parse_int<std::uint64_t>(fields[1], "sentence_id", line_no);
    token.word = std::string(fields[2]);
    token.pos = std::string(fields[3]);
    token.source = std::string(fields[4]);
    if (token.row == 0) throw ParseError("row numbers start at 1", line_no);
    if (token.word.empty()) throw ParseError("empty word", line_no);

    if (corpus.sentences.empty() || corpus.sentences.back().id != token.sentence_id) {
      if (!seen_ids.insert(token.sentence_id).second) {
        throw ParseError("sentence id " + std::to_string(token.sentence_id) +
                             " appears in two separate blocks",
                         line_no);
      }
      corpus.sentences.push_back({token.sentence_id, {}});
    } else if (token.row <= last_row) {
      throw ParseError("row numbers must increase within a sentence", line_no);
    }
    last_row = token.row;
    corpus.sentences.back().tokens.push_back(finish(std::move(token), fields, line_no));
  }
  if (!have_header) throw ParseError("missing header line");
  return corpus;
}

void check_field(std::string_view field, std::string_view column) {
  if (field.find_first_of("\t\n") != std::string_view::npos) {
    throw DataError("column '" + std::string(column) + "' contains a tab or newline: '" +
                    std::string(field) + "'");
  }
}

void append_token(std::string& out, const Token& t) {
  check_field(t.word, "word");
  check_field(t.pos, "pos");
  check_field(t.source, "source");
  out += std::to_string(t.row);
  out += '\t';
  out += std::to_string(t.sentence_id);
  out += '\t';
  out += t.word;
  out += '\t';
  out += t.pos;
  out += '\t';
  out += t.source;
}

}  // namespace

Corpus parse_corpus(std::string_view text) {
  return parse_table<Token>(text, kCorpusHeader, 5,
                            [](Token t, const auto&, std::size_t) { return t; });
}

ParallelCorpus parse_parallel(std::string_view text) {
  return parse_table<LabeledToken>(
      text, kParallelHeader, 7, [](Token t, const auto& fields, std::size_t line) {
        LabeledToken lt{std::move(t), std::string(fields[5]), {}};
        try {
          lt.label = LabelClass::parse(fields[6]);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line);
        }
        if (lt.misspelt.empty()) throw ParseError("empty misspelt word", line);
        if (lt.label.is_na() != (lt.misspelt == lt.base.word)) {
          throw ParseError("N/A label must coincide with an unchanged word", line);
        }
        return lt;
      });
}

std::string format_corpus(const Corpus& corpus) {
  std::string out(kCorpusHeader);
  out += '\n';
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      append_token(out, t);
      out += '\n';
    }
  }
  return out;
}

std::string format_parallel(const ParallelCorpus& corpus) {
  std::string out(kParallelHeader);
  out += '\n';
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      append_token(out, t.base);
      check_field(t.misspelt, "misspelt_word");
      out += '\t';
      out += t.misspelt;
      out += '\t';
      out += t.label.to_string();
      out += '\n';
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

Corpus load_corpus(const std::filesystem::path& path) { return parse_corpus(read_file(path)); }

ParallelCorpus load_parallel(const std::filesystem::path& path) {
  return parse_parallel(read_file(path));
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  write_file(path, format_corpus(corpus));
}

void write_parallel(const std::filesystem::path& path, const ParallelCorpus& corpus) {
  write_file(path, format_parallel(corpus));
}

Corpus originals(const ParallelCorpus& corpus) {
  Corpus out;
  out.sentences.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) {
    Sentence plain{s.id, {}};
    plain.tokens.reserve(s.tokens.size());
    for (const auto& t : s.tokens) plain.tokens.push_back(t.base);
    out.sentences.push_back(std::move(plain));
  }
  return out;
}

ParallelCorpus unlabeled(const Corpus& corpus) {
  ParallelCorpus out;
  out.sentences.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) {
    LabeledSentence ls{s.id, {}};
    ls.tokens.reserve(s.tokens.size());
    for (const auto& t : s.tokens) ls.tokens.push_back({t, t.word, LabelClass::na()});
    out.sentences.push_back(std::move(ls));
  }
  return out;
}

CorpusStats corpus_statistics(const Corpus& corpus) {
  CorpusStats stats;
  std::unordered_set<std::string_view> words;
  stats.sentence_count = corpus.sentences.size();
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      ++stats.word_count;
      words.insert(t.word);
      ++stats.word_length_histogram[text::utf8_length(t.word)];
      ++stats.pos_histogram[t.pos];
    }
  }
  stats.unique_word_count = words.size();
  stats.distinct_pos_count = stats.pos_histogram.size();
  return stats;
}

std::vector<std::size_t> split_sizes(std::size_t n, std::span<const double> ratios) {
  if (ratios.empty()) throw DataError("no split ratios given");
  double sum = 0;
  for (double r : ratios) {
    if (!(r > 0)) throw DataError("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DataError("split ratios must sum to 1");
  if (n < ratios.size()) {
    throw DataError("cannot split " + std::to_string(n) + " sentences into " +
                    std::to_string(ratios.size()) + " parts");
  }
  std::vector<std::size_t> sizes(ratios.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double exact = static_cast<double>(n) * ratios[i];
    sizes[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += sizes[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[remainders[k].second];
  return sizes;
}

std::vector<std::vector<std::size_t>> split_indices(std::size_t n, std::span<const double> ratios,
                                                    std::uint64_t seed) {
  const auto sizes = split_sizes(n, ratios);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream rng(derive_seed({seed, 0x73706c6974ULL}));
  rng.shuffle(std::span(order));
  std::vector<std::vector<std::size_t>> parts;
  std::size_t begin = 0;
  for (std::size_t size : sizes) {
    std::vector<std::size_t> part(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                  order.begin() + static_cast<std::ptrdiff_t>(begin + size));
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
    begin += size;
  }
  return parts;
}

}  // namespace ptypo
