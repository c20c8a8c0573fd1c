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

// Template-driven synthetic corpora for tests and demos. The real tagged
// corpora are not redistributable; these sentences exercise the same code
// paths (ZWNJ words, multi-word tokens, punctuation) at desk scale.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptypo/corpus.hpp"

namespace ptypo {

struct LexiconEntry {
  std::string word;
  std::string pos;

  bool operator==(const LexiconEntry&) const = default;
};

// "word<TAB>pos" lines; blank lines and lines starting with '#' are skipped.
// Throws ParseError.
std::vector<LexiconEntry> parse_lexicon(std::string_view text);
std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path);

// Sentences with ids 1..count built from fixed clause templates; words are
// drawn uniformly per POS. Throws DataError when a template POS has no
// entries.
Corpus synthesize_corpus(std::span<const LexiconEntry> lexicon, std::size_t count,
                         std::uint64_t seed, std::string_view source = "synthetic");

}  // namespace ptypo
