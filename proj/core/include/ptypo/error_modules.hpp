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

// Single-edit word corruptions, one per error tag.
//
// Every module picks a legal site uniformly, then a legal replacement
// uniformly, and returns NotApplicable when the word offers no legal site.
// A Changed outcome always differs from its input.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ptypo/resources.hpp"
#include "ptypo/rng.hpp"

namespace ptypo {

// Stable integer codes; do not reorder.
enum class ErrorTag : std::uint8_t {
  kInsertion = 0,
  kDeletion = 1,
  kSubstitution = 2,
  kTransposition = 3,
  kSoundSimilarity = 4,
  kShapeSimilarity = 5,
  kRepetition = 6,
  kSpacePseudoToWhite = 7,
  kSpacePseudoToEmpty = 8,
  kSpaceWhiteToPseudo = 9,
  kSpaceWhiteToEmpty = 10,
  kSpaceEmptyToPseudo = 11,
  kSpaceEmptyToWhite = 12,
  kFaToAr = 13,
  kSilentLetter = 14,
  kCommonConfusion = 15,
};

inline constexpr std::size_t kErrorTagCount = 16;

constexpr std::uint8_t code(ErrorTag tag) { return static_cast<std::uint8_t>(tag); }

// Throws DataError for codes >= kErrorTagCount.
ErrorTag tag_from_code(int code);

// All tags in code order.
const std::array<ErrorTag, kErrorTagCount>& all_error_tags();

// Human-readable name used in the typo_type column, e.g. "deletion".
std::string_view tag_name(ErrorTag tag);
std::optional<ErrorTag> tag_from_name(std::string_view name);

// The spacing tag that turns `from` into `to`; nullopt when from == to.
std::optional<ErrorTag> spacing_tag(SeparatorKind from, SeparatorKind to);

struct ApplyOutcome {
  // nullopt means the module had no legal site in the word.
  std::optional<std::u32string> word;

  static ApplyOutcome not_applicable() { return {}; }
  static ApplyOutcome changed(std::u32string w) { return {std::move(w)}; }

  bool applied() const { return word.has_value(); }
};

ApplyOutcome apply_insertion(std::u32string_view word, RngStream& rng, const Resources& res);
ApplyOutcome apply_deletion(std::u32string_view word, RngStream& rng, const Resources& res);
ApplyOutcome apply_substitution(std::u32string_view word, RngStream& rng, const Resources& res);
ApplyOutcome apply_transposition(std::u32string_view word, RngStream& rng,
                                 const Resources& res);
ApplyOutcome apply_similarity(ConfusionKind kind, std::u32string_view word, RngStream& rng,
                              const Resources& res);
// Copies one character 1 or 2 more times right after itself.
ApplyOutcome apply_repetition(std::u32string_view word, RngStream& rng, const Resources& res);
// `tag` must be one of the six kSpace* tags.
ApplyOutcome apply_spacing(ErrorTag tag, std::u32string_view word, RngStream& rng,
                           const Resources& res);
ApplyOutcome apply_fa_to_ar(std::u32string_view word, RngStream& rng, const Resources& res);
ApplyOutcome apply_silent_letter(std::u32string_view word, RngStream& rng,
                                 const Resources& res);
ApplyOutcome apply_common_confusion(std::u32string_view word, RngStream& rng,
                                    const Resources& res);

// Dispatches on tag.
ApplyOutcome apply_error(ErrorTag tag, std::u32string_view word, RngStream& rng,
                         const Resources& res);

}  // namespace ptypo
