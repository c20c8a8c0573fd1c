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

#include "oracles.hpp"

#include <cmath>
#include <set>

#include "ptypo/text.hpp"

namespace ptypo::testing {
namespace {

constexpr char32_t kSpace = U' ';
constexpr char32_t kZwnj = U'\u200C';

std::u32string all_keys(const KeyboardLayout& layout) {
  std::u32string keys;
  for (const auto& row : layout.rows) keys += row;
  return keys;
}

// The Persian alphabet: the Arabic letter block plus pe, che, zhe, keheh,
// gaf and Farsi yeh.
bool letter(char32_t c) {
  return (c >= 0x0621 && c <= 0x064A) || c == 0x067E || c == 0x0686 || c == 0x0698 ||
         c == 0x06A9 || c == 0x06AF || c == 0x06CC || (c >= U'a' && c <= U'z') ||
         (c >= U'A' && c <= U'Z');
}

const std::u32string* group_of(const std::vector<std::u32string>& groups, char32_t c) {
  for (const auto& g : groups) {
    if (g.find(c) != std::u32string::npos) return &g;
  }
  return nullptr;
}

// Adds outcome `out` with the probability of choosing `site` of `sites`
// and then one of `choices` options.
void add(std::map<std::u32string, double>& m, std::u32string out, std::size_t sites,
         std::size_t choices) {
  m[std::move(out)] += 1.0 / static_cast<double>(sites) / static_cast<double>(choices);
}

using Edit = std::vector<std::u32string>;  // outputs of one site

std::map<std::u32string, double> from_sites(const std::vector<Edit>& sites) {
  std::map<std::u32string, double> m;
  std::size_t live = 0;
  for (const auto& s : sites) live += !s.empty();
  for (const auto& s : sites) {
    for (const auto& out : s) add(m, out, live, s.size());
  }
  return m;
}

std::vector<std::size_t> find_all(std::u32string_view w, std::u32string_view pat) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + pat.size() <= w.size(); ++i) {
    if (w.substr(i, pat.size()) == pat) out.push_back(i);
  }
  return out;
}

}  // namespace

bool keys_adjacent(const KeyboardLayout& layout, char32_t a, char32_t b) {
  if (a == b) return false;
  double ax = 0, bx = 0;
  long ar = -10, br = -10;
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    for (std::size_t c = 0; c < layout.rows[r].size(); ++c) {
      const double x = static_cast<double>(c) + layout.offsets[r] * 0.5;
      if (layout.rows[r][c] == a) ar = static_cast<long>(r), ax = x;
      if (layout.rows[r][c] == b) br = static_cast<long>(r), bx = x;
    }
  }
  if (ar < 0 || br < 0) return false;
  return std::labs(ar - br) <= 1 && std::fabs(ax - bx) <= 1.0;
}

std::map<std::u32string, double> module_outcomes(ErrorTag tag, std::u32string_view word,
                                                 const KeyboardLayout& layout,
                                                 const ConfusionTables& tables) {
  const std::u32string w(word);
  const std::size_t n = w.size();
  const std::u32string keys = all_keys(layout);
  std::vector<Edit> sites;

  auto substitute_each = [&](auto&& options_for) {
    for (std::size_t i = 0; i < n; ++i) {
      Edit e;
      for (char32_t c : options_for(w[i])) {
        std::u32string out = w;
        out[i] = c;
        e.push_back(out);
      }
      sites.push_back(e);
    }
  };
  auto group_options = [](const std::vector<std::u32string>& groups) {
    return [&groups](char32_t c) {
      std::u32string opts;
      if (const auto* g = group_of(groups, c)) {
        for (char32_t o : *g) {
          if (o != c) opts += o;
        }
      }
      return opts;
    };
  };

  switch (tag) {
    case ErrorTag::kInsertion:
      for (std::size_t p = 0; n > 0 && p <= n; ++p) {
        const char32_t anchor = p == 0 ? w[0] : w[p - 1];
        Edit e;
        for (char32_t c : keys) {
          if (!keys_adjacent(layout, anchor, c)) continue;
          if ((p > 0 && w[p - 1] == c) || (p < n && w[p] == c)) continue;
          e.push_back(w.substr(0, p) + c + w.substr(p));
        }
        sites.push_back(e);
      }
      break;
    case ErrorTag::kDeletion:
      for (std::size_t i = 0; i < n; ++i) sites.push_back({w.substr(0, i) + w.substr(i + 1)});
      break;
    case ErrorTag::kSubstitution:
      substitute_each([&](char32_t c) {
        std::u32string opts;
        for (char32_t k : keys) {
          if (keys_adjacent(layout, c, k)) opts += k;
        }
        return opts;
      });
      break;
    case ErrorTag::kTransposition:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (w[i] == w[i + 1]) continue;
        std::u32string out = w;
        std::swap(out[i], out[i + 1]);
        sites.push_back({out});
      }
      break;
    case ErrorTag::kSoundSimilarity:
      substitute_each(group_options(tables.sound_groups));
      break;
    case ErrorTag::kShapeSimilarity:
      substitute_each(group_options(tables.shape_groups));
      break;
    case ErrorTag::kRepetition:
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == kSpace || w[i] == kZwnj) continue;
        sites.push_back({w.substr(0, i + 1) + w[i] + w.substr(i + 1),
                         w.substr(0, i + 1) + w[i] + w[i] + w.substr(i + 1)});
      }
      break;
    case ErrorTag::kSpacePseudoToWhite:
    case ErrorTag::kSpacePseudoToEmpty:
    case ErrorTag::kSpaceWhiteToPseudo:
    case ErrorTag::kSpaceWhiteToEmpty: {
      const bool from_pseudo =
          tag == ErrorTag::kSpacePseudoToWhite || tag == ErrorTag::kSpacePseudoToEmpty;
      const char32_t from = from_pseudo ? kZwnj : kSpace;
      const bool to_empty =
          tag == ErrorTag::kSpacePseudoToEmpty || tag == ErrorTag::kSpaceWhiteToEmpty;
      const char32_t to = from_pseudo ? kSpace : kZwnj;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] != from) continue;
        sites.push_back({to_empty ? w.substr(0, i) + w.substr(i + 1)
                                  : w.substr(0, i) + to + w.substr(i + 1)});
      }
      break;
    }
    case ErrorTag::kSpaceEmptyToPseudo:
    case ErrorTag::kSpaceEmptyToWhite: {
      const char32_t to = tag == ErrorTag::kSpaceEmptyToPseudo ? kZwnj : kSpace;
      for (std::size_t p = 1; p < n; ++p) {
        if (letter(w[p - 1]) && letter(w[p])) sites.push_back({w.substr(0, p) + to + w.substr(p)});
      }
      break;
    }
    case ErrorTag::kFaToAr:
      substitute_each([&](char32_t c) {
        auto it = tables.fa_to_ar.find(c);
        return it == tables.fa_to_ar.end() ? std::u32string() : std::u32string(1, it->second);
      });
      break;
    case ErrorTag::kSilentLetter:
      for (const auto& pat : tables.silent_patterns) {
        for (std::size_t at : find_all(w, pat.trigger)) {
          std::u32string out = w;
          out.erase(at + pat.silent_index, 1);
          sites.push_back({out});
        }
      }
      break;
    case ErrorTag::kCommonConfusion:
      for (const auto& pair : tables.common_confusions) {
        for (std::size_t at : find_all(w, pair.pattern)) {
          sites.push_back(
              {w.substr(0, at) + pair.replacement + w.substr(at + pair.pattern.size())});
        }
      }
      break;
  }
  return from_sites(sites);
}

std::pair<int, int> length_delta_bounds(ErrorTag tag, std::u32string_view,
                                        const ConfusionTables& tables) {
  switch (tag) {
    case ErrorTag::kInsertion:
    case ErrorTag::kSpaceEmptyToPseudo:
    case ErrorTag::kSpaceEmptyToWhite:
      return {1, 1};
    case ErrorTag::kDeletion:
    case ErrorTag::kSpacePseudoToEmpty:
    case ErrorTag::kSpaceWhiteToEmpty:
    case ErrorTag::kSilentLetter:
      return {-1, -1};
    case ErrorTag::kRepetition:
      return {1, 2};
    case ErrorTag::kCommonConfusion: {
      int lo = 0, hi = 0;
      bool first = true;
      for (const auto& p : tables.common_confusions) {
        const int d = static_cast<int>(p.replacement.size()) - static_cast<int>(p.pattern.size());
        lo = first ? d : std::min(lo, d);
        hi = first ? d : std::max(hi, d);
        first = false;
      }
      return {lo, hi};
    }
    default:
      return {0, 0};
  }
}

std::filesystem::path data_dir() { return PTYPO_TEST_DATA_DIR; }

Corpus fixture_corpus() { return load_corpus(data_dir() / "fixtures" / "synthetic_500.tsv"); }

std::vector<std::u32string> fixture_words() {
  std::vector<std::u32string> out;
  std::set<std::u32string> seen;
  for (const auto& s : fixture_corpus().sentences) {
    for (const auto& t : s.tokens) {
      auto w = text::decode_utf8(t.word);
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace ptypo::testing
