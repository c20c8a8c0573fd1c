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

#include "ptypo/error_modules.hpp"

#include <vector>

#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

constexpr std::array<std::string_view, kErrorTagCount> kTagNames = {
    "insertion",
    "deletion",
    "substitution",
    "transposition",
    "sound similarity",
    "shape similarity",
    "repetition",
    "pseudo space to white space",
    "pseudo space to empty",
    "white space to pseudo space",
    "white space to empty",
    "empty to pseudo space",
    "empty to white space",
    "persian to arabic",
    "silent letter",
    "common confusion",
};

constexpr std::array<ErrorTag, kErrorTagCount> kAllTags = [] {
  std::array<ErrorTag, kErrorTagCount> tags{};
  for (std::size_t i = 0; i < kErrorTagCount; ++i) tags[i] = static_cast<ErrorTag>(i);
  return tags;
}();

// A position plus the characters that may be written there.
struct Site {
  std::size_t pos;
  std::vector<char32_t> choices;
};

// Replaces word[pos] with a uniformly drawn legal choice.
ApplyOutcome substitute_at_site(std::u32string_view word, const std::vector<Site>& sites,
                                RngStream& rng) {
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const Site& site = sites[rng.index(sites.size())];
  std::u32string out(word);
  out[site.pos] = site.choices[rng.index(site.choices.size())];
  return ApplyOutcome::changed(std::move(out));
}

std::vector<std::size_t> positions_of(std::u32string_view word, char32_t ch) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == ch) out.push_back(i);
  }
  return out;
}

// All (overlapping) occurrences of `needle`.
std::vector<std::size_t> occurrences(std::u32string_view word, std::u32string_view needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  for (std::size_t p = word.find(needle); p != std::u32string_view::npos;
       p = word.find(needle, p + 1)) {
    out.push_back(p);
  }
  return out;
}

struct PatternSite {
  std::size_t pattern;
  std::size_t pos;
};

}  // namespace

ErrorTag tag_from_code(int code) {
  if (code < 0 || code >= static_cast<int>(kErrorTagCount)) {
    throw DataError("error tag code out of range: " + std::to_string(code));
  }
  return static_cast<ErrorTag>(code);
}

const std::array<ErrorTag, kErrorTagCount>& all_error_tags() { return kAllTags; }

std::string_view tag_name(ErrorTag tag) { return kTagNames[code(tag)]; }

std::optional<ErrorTag> tag_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kErrorTagCount; ++i) {
    if (kTagNames[i] == name) return static_cast<ErrorTag>(i);
  }
  return std::nullopt;
}

std::optional<ErrorTag> spacing_tag(SeparatorKind from, SeparatorKind to) {
  using K = SeparatorKind;
  if (from == K::kPseudoSpace && to == K::kWhiteSpace) return ErrorTag::kSpacePseudoToWhite;
  if (from == K::kPseudoSpace && to == K::kEmpty) return ErrorTag::kSpacePseudoToEmpty;
  if (from == K::kWhiteSpace && to == K::kPseudoSpace) return ErrorTag::kSpaceWhiteToPseudo;
  if (from == K::kWhiteSpace && to == K::kEmpty) return ErrorTag::kSpaceWhiteToEmpty;
  if (from == K::kEmpty && to == K::kPseudoSpace) return ErrorTag::kSpaceEmptyToPseudo;
  if (from == K::kEmpty && to == K::kWhiteSpace) return ErrorTag::kSpaceEmptyToWhite;
  return std::nullopt;
}

ApplyOutcome apply_insertion(std::u32string_view word, RngStream& rng, const Resources& res) {
  std::vector<Site> sites;
  const std::size_t n = word.size();
  if (n == 0) return ApplyOutcome::not_applicable();
  // Inserting at `pos` types a neighbour of the key pressed just before it
  // (or of the first key when inserting at the front).
  for (std::size_t pos = 0; pos <= n; ++pos) {
    const char32_t anchor = pos > 0 ? word[pos - 1] : word[0];
    Site site{pos, {}};
    for (char32_t c : res.neighbors(anchor)) {
      if (pos > 0 && c == word[pos - 1]) continue;
      if (pos < n && c == word[pos]) continue;
      site.choices.push_back(c);
    }
    if (!site.choices.empty()) sites.push_back(std::move(site));
  }
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const Site& site = sites[rng.index(sites.size())];
  std::u32string out(word);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(site.pos),
             site.choices[rng.index(site.choices.size())]);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_deletion(std::u32string_view word, RngStream& rng, const Resources&) {
  if (word.empty()) return ApplyOutcome::not_applicable();
  std::u32string out(word);
  out.erase(rng.index(word.size()), 1);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_substitution(std::u32string_view word, RngStream& rng, const Resources& res) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& nb = res.neighbors(word[i]);
    if (!nb.empty()) sites.push_back({i, nb});
  }
  return substitute_at_site(word, sites, rng);
}

ApplyOutcome apply_transposition(std::u32string_view word, RngStream& rng, const Resources&) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] != word[i + 1]) sites.push_back(i);
  }
  if (sites.empty()) return ApplyOutcome::not_applicable();
  std::u32string out(word);
  const std::size_t i = sites[rng.index(sites.size())];
  std::swap(out[i], out[i + 1]);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_similarity(ConfusionKind kind, std::u32string_view word, RngStream& rng,
                              const Resources& res) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& group = res.confusable(kind, word[i]);
    if (!group.empty()) sites.push_back({i, group});
  }
  return substitute_at_site(word, sites, rng);
}

ApplyOutcome apply_repetition(std::u32string_view word, RngStream& rng, const Resources&) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!text::is_separator(word[i])) sites.push_back(i);
  }
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const std::size_t i = sites[rng.index(sites.size())];
  const std::size_t copies = 1 + rng.index(2);
  std::u32string out(word);
  out.insert(i + 1, copies, word[i]);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_spacing(ErrorTag tag, std::u32string_view word, RngStream& rng,
                           const Resources&) {
  SeparatorKind from;
  SeparatorKind to;
  switch (tag) {
    case ErrorTag::kSpacePseudoToWhite:
      from = SeparatorKind::kPseudoSpace, to = SeparatorKind::kWhiteSpace;
      break;
    case ErrorTag::kSpacePseudoToEmpty:
      from = SeparatorKind::kPseudoSpace, to = SeparatorKind::kEmpty;
      break;
    case ErrorTag::kSpaceWhiteToPseudo:
      from = SeparatorKind::kWhiteSpace, to = SeparatorKind::kPseudoSpace;
      break;
    case ErrorTag::kSpaceWhiteToEmpty:
      from = SeparatorKind::kWhiteSpace, to = SeparatorKind::kEmpty;
      break;
    case ErrorTag::kSpaceEmptyToPseudo:
      from = SeparatorKind::kEmpty, to = SeparatorKind::kPseudoSpace;
      break;
    case ErrorTag::kSpaceEmptyToWhite:
      from = SeparatorKind::kEmpty, to = SeparatorKind::kWhiteSpace;
      break;
    default:
      throw DataError("not a spacing tag: " + std::string(tag_name(tag)));
  }

  std::u32string out(word);
  if (from == SeparatorKind::kEmpty) {
    // Between two letters only; never at either end of the word.
    std::vector<std::size_t> sites;
    for (std::size_t p = 1; p < word.size(); ++p) {
      if (text::is_letter(word[p - 1]) && text::is_letter(word[p])) sites.push_back(p);
    }
    if (sites.empty()) return ApplyOutcome::not_applicable();
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(sites[rng.index(sites.size())]),
               *separator_code_point(to));
    return ApplyOutcome::changed(std::move(out));
  }

  const auto sites = positions_of(word, *separator_code_point(from));
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const std::size_t p = sites[rng.index(sites.size())];
  if (auto cp = separator_code_point(to)) {
    out[p] = *cp;
  } else {
    out.erase(p, 1);
  }
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_fa_to_ar(std::u32string_view word, RngStream& rng, const Resources& res) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (auto ar = res.arabic_form(word[i])) sites.push_back({i, {*ar}});
  }
  return substitute_at_site(word, sites, rng);
}

ApplyOutcome apply_silent_letter(std::u32string_view word, RngStream& rng,
                                 const Resources& res) {
  const auto& patterns = res.tables().silent_patterns;
  std::vector<PatternSite> sites;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    for (std::size_t pos : occurrences(word, patterns[k].trigger)) sites.push_back({k, pos});
  }
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const PatternSite& site = sites[rng.index(sites.size())];
  std::u32string out(word);
  out.erase(site.pos + patterns[site.pattern].silent_index, 1);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_common_confusion(std::u32string_view word, RngStream& rng,
                                    const Resources& res) {
  const auto& pairs = res.tables().common_confusions;
  std::vector<PatternSite> sites;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t pos : occurrences(word, pairs[k].pattern)) sites.push_back({k, pos});
  }
  if (sites.empty()) return ApplyOutcome::not_applicable();
  const PatternSite& site = sites[rng.index(sites.size())];
  const ConfusionPair& pair = pairs[site.pattern];
  std::u32string out(word);
  out.replace(site.pos, pair.pattern.size(), pair.replacement);
  return ApplyOutcome::changed(std::move(out));
}

ApplyOutcome apply_error(ErrorTag tag, std::u32string_view word, RngStream& rng,
                         const Resources& res) {
  switch (tag) {
    case ErrorTag::kInsertion:
      return apply_insertion(word, rng, res);
    case ErrorTag::kDeletion:
      return apply_deletion(word, rng, res);
    case ErrorTag::kSubstitution:
      return apply_substitution(word, rng, res);
    case ErrorTag::kTransposition:
      return apply_transposition(word, rng, res);
    case ErrorTag::kSoundSimilarity:
      return apply_similarity(ConfusionKind::kSound, word, rng, res);
    case ErrorTag::kShapeSimilarity:
      return apply_similarity(ConfusionKind::kShape, word, rng, res);
    case ErrorTag::kRepetition:
      return apply_repetition(word, rng, res);
    case ErrorTag::kSpacePseudoToWhite:
    case ErrorTag::kSpacePseudoToEmpty:
    case ErrorTag::kSpaceWhiteToPseudo:
    case ErrorTag::kSpaceWhiteToEmpty:
    case ErrorTag::kSpaceEmptyToPseudo:
    case ErrorTag::kSpaceEmptyToWhite:
      return apply_spacing(tag, word, rng, res);
    case ErrorTag::kFaToAr:
      return apply_fa_to_ar(word, rng, res);
    case ErrorTag::kSilentLetter:
      return apply_silent_letter(word, rng, res);
    case ErrorTag::kCommonConfusion:
      return apply_common_confusion(word, rng, res);
  }
  throw DataError("unknown error tag");
}

}  // namespace ptypo
