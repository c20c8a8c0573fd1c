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

#include "ptypo/synthetic.hpp"

#include <map>

#include "ptypo/errors.hpp"
#include "ptypo/rng.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

constexpr std::uint64_t kSynthSalt = 0x73796e7468ULL;

// Clause shapes. A sentence joins one to three clauses with a CONJ or DELM
// token and ends with PUNC.
const std::vector<std::vector<std::string_view>>& clause_templates() {
  static const std::vector<std::vector<std::string_view>> t = {
      {"DET", "N", "AJ", "POSTP", "V"},
      {"PRO", "N", "POSTP", "V"},
      {"PRO", "ADV", "P", "N", "V"},
      {"N", "AJ", "V"},
      {"PRO", "P", "DET", "N", "V"},
      {"ADV", "PRO", "P", "N", "AJ", "V"},
      {"DET", "N", "POSTP", "P", "N", "V"},
      {"P", "N", "AJ", "N", "V"},
      {"N", "N", "AJ", "P", "N", "AJ", "V"},
  };
  return t;
}

constexpr std::string_view kJoiners[] = {"CONJ", "DELM"};
constexpr std::size_t kMaxClauses = 3;

}  // namespace

std::vector<LexiconEntry> parse_lexicon(std::string_view text) {
  std::vector<LexiconEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("lexicon line needs exactly two tab-separated fields", line_no);
    }
    if (!text::is_valid_utf8(line)) throw ParseError("lexicon line is not valid UTF-8", line_no);
    out.push_back({std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))});
  }
  return out;
}

std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(read_file(path));
}

Corpus synthesize_corpus(std::span<const LexiconEntry> lexicon, std::size_t count,
                         std::uint64_t seed, std::string_view source) {
  std::map<std::string, std::vector<const LexiconEntry*>, std::less<>> by_pos;
  for (const auto& e : lexicon) by_pos[e.pos].push_back(&e);
  auto require = [&by_pos](std::string_view pos) {
    if (!by_pos.contains(pos)) throw DataError("lexicon has no entries tagged " + std::string(pos));
  };
  for (const auto& tmpl : clause_templates()) {
    for (auto pos : tmpl) require(pos);
  }
  for (auto pos : kJoiners) require(pos);
  require("PUNC");

  RngStream rng(derive_seed({seed, kSynthSalt}));
  Corpus corpus;
  corpus.sentences.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<std::string_view> shape;
    const std::size_t clauses = 1 + rng.index(kMaxClauses);
    for (std::size_t c = 0; c < clauses; ++c) {
      if (c > 0) shape.push_back(kJoiners[rng.index(std::size(kJoiners))]);
      const auto& tmpl = clause_templates()[rng.index(clause_templates().size())];
      shape.insert(shape.end(), tmpl.begin(), tmpl.end());
    }
    shape.push_back("PUNC");
    Sentence sentence;
    sentence.id = s + 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      const auto& pool = by_pos.find(shape[i])->second;
      const LexiconEntry* e = pool[rng.index(pool.size())];
      sentence.tokens.push_back(
          {static_cast<std::uint32_t>(i + 1), sentence.id, e->word, e->pos, std::string(source)});
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace ptypo
