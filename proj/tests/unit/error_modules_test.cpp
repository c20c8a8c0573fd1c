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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "ptypo/error_modules.hpp"
#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

using text::decode_utf8;

const Resources& res() {
  static const Resources r = Resources::defaults();
  return r;
}

// Every distinct output over `draws` seeded applications; "" stands for
// not-applicable only when `na` is set.
std::set<std::u32string> outputs(ErrorTag tag, std::u32string_view word, int draws = 500,
                                 bool* na = nullptr) {
  std::set<std::u32string> out;
  RngStream rng(derive_seed({code(tag), word.size()}));
  for (int i = 0; i < draws; ++i) {
    const auto o = apply_error(tag, word, rng, res());
    if (!o.applied()) {
      if (na) *na = true;
      continue;
    }
    out.insert(*o.word);
  }
  return out;
}

bool not_applicable(ErrorTag tag, std::u32string_view word) {
  RngStream rng(1);
  return !apply_error(tag, word, rng, res()).applied();
}

bool reachable(ErrorTag tag, std::u32string_view word, std::u32string_view target) {
  return outputs(tag, word, 3000).contains(std::u32string(target));
}

TEST(ErrorTag, CodesAndNamesAreStable) {
  ASSERT_EQ(all_error_tags().size(), 16u);
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < 16; ++i) {
    const ErrorTag t = all_error_tags()[i];
    EXPECT_EQ(code(t), i);
    EXPECT_EQ(tag_from_code(static_cast<int>(i)), t);
    EXPECT_EQ(tag_from_name(tag_name(t)), t);
    names.insert(tag_name(t));
  }
  EXPECT_EQ(names.size(), 16u);
  EXPECT_THROW(tag_from_code(16), DataError);
  EXPECT_EQ(tag_from_name("nonsense"), std::nullopt);
}

TEST(ErrorTag, SpacingTagFromSeparators) {
  using K = SeparatorKind;
  EXPECT_EQ(spacing_tag(K::kPseudoSpace, K::kWhiteSpace), ErrorTag::kSpacePseudoToWhite);
  EXPECT_EQ(spacing_tag(K::kEmpty, K::kPseudoSpace), ErrorTag::kSpaceEmptyToPseudo);
  EXPECT_EQ(spacing_tag(K::kWhiteSpace, K::kWhiteSpace), std::nullopt);
}

// Empirical distribution over 4000 draws against the enumerated one.
TEST(ErrorModules, DistributionsMatchOracle) {
  const std::vector<std::u32string> words = {
      U"کتاب", U"خواهر", U"سلام؟", U"بی‌حوصله", U"کتاب خواندن", U"قانونگذار",
      U"منظومه", U"ب", U"سیاست‌گذار", U"داودی"};
  constexpr int kDraws = 4000;
  for (ErrorTag tag : all_error_tags()) {
    for (const auto& w : words) {
      const auto oracle = testing::module_outcomes(tag, w, res().layout(), res().tables());
      std::map<std::u32string, int> counts;
      RngStream rng(derive_seed({7, code(tag), w.size()}));
      for (int i = 0; i < kDraws; ++i) {
        const auto o = apply_error(tag, w, rng, res());
        ASSERT_EQ(o.applied(), !oracle.empty()) << tag_name(tag);
        if (o.applied()) ++counts[*o.word];
      }
      for (const auto& [out, n] : counts) {
        ASSERT_TRUE(oracle.contains(out)) << tag_name(tag) << " " << text::encode_utf8(out);
      }
      for (const auto& [out, p] : oracle) {
        const double expected = p * kDraws;
        const double sd = std::sqrt(kDraws * p * (1 - p));
        EXPECT_LE(std::fabs(counts[out] - expected), 5 * sd + 1)
            << tag_name(tag) << " " << text::encode_utf8(w) << " -> " << text::encode_utf8(out);
      }
    }
  }
}

TEST(Insertion, AdjacentKeyAndLengthPlusOne) {
  EXPECT_TRUE(not_applicable(ErrorTag::kInsertion, U"!!"));
  const auto outs = outputs(ErrorTag::kInsertion, U"عالی", 200);
  ASSERT_FALSE(outs.empty());
  for (const auto& o : outs) EXPECT_EQ(o.size(), 5u);
  for (const auto& o : outputs(ErrorTag::kInsertion, U"کتاب", 1000)) {
    EXPECT_EQ(o.size(), 5u);
    // Some adjacent pair of the output is a keyboard-adjacent pair.
    bool adjacent_pair = false;
    for (std::size_t i = 0; i + 1 < o.size(); ++i) {
      adjacent_pair |= testing::keys_adjacent(res().layout(), o[i], o[i + 1]);
      EXPECT_NE(o[i], o[i + 1]);
    }
    EXPECT_TRUE(adjacent_pair);
  }
}

TEST(Deletion, Examples) {
  EXPECT_TRUE(reachable(ErrorTag::kDeletion, U"دار", U"در"));
  RngStream rng(1);
  EXPECT_EQ(apply_deletion(U"ا", rng, res()).word, std::u32string());
  const std::set<std::u32string> singles = {U"واهر", U"خاهر", U"خوهر", U"خوار", U"خواه"};
  EXPECT_EQ(outputs(ErrorTag::kDeletion, U"خواهر", 500), singles);
}

TEST(Substitution, Examples) {
  EXPECT_EQ(reachable(ErrorTag::kSubstitution, U"خال", U"خار"),
            testing::keys_adjacent(res().layout(), U'ل', U'ر'));
  EXPECT_TRUE(not_applicable(ErrorTag::kSubstitution, U"؟"));
  for (const auto& o : outputs(ErrorTag::kSubstitution, U"من", 500)) {
    ASSERT_EQ(o.size(), 2u);
    const std::u32string in = U"من";
    int diffs = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      if (o[i] == in[i]) continue;
      ++diffs;
      EXPECT_TRUE(testing::keys_adjacent(res().layout(), in[i], o[i]));
    }
    EXPECT_EQ(diffs, 1);
  }
}

TEST(Transposition, AdjacentSwapsOnly) {
  EXPECT_TRUE(not_applicable(ErrorTag::kTransposition, U"اا"));
  EXPECT_EQ(outputs(ErrorTag::kTransposition, U"سلام"),
            (std::set<std::u32string>{U"لسام", U"سالم", U"سلما"}));
  EXPECT_EQ(outputs(ErrorTag::kTransposition, U"روز"), (std::set<std::u32string>{U"ورز", U"رزو"}));
}

TEST(Similarity, Examples) {
  EXPECT_TRUE(reachable(ErrorTag::kSoundSimilarity, U"منظومه", U"منضومه"));
  EXPECT_TRUE(reachable(ErrorTag::kShapeSimilarity, U"ثانویه", U"تانویه"));
  EXPECT_TRUE(not_applicable(ErrorTag::kSoundSimilarity, U"ء"));
  EXPECT_TRUE(not_applicable(ErrorTag::kShapeSimilarity, U"ء"));
}

TEST(Repetition, Examples) {
  EXPECT_TRUE(reachable(ErrorTag::kRepetition, U"داودی", U"داوودی"));
  EXPECT_EQ(outputs(ErrorTag::kRepetition, U"ب"), (std::set<std::u32string>{U"بب", U"ببب"}));
  EXPECT_TRUE(not_applicable(ErrorTag::kRepetition, U""));
  // Collapsing the run that grew gives the input back.
  const std::u32string in = U"کتاب";
  for (const auto& o : outputs(ErrorTag::kRepetition, in, 500)) {
    bool restores = false;
    for (std::size_t i = 0; i < o.size(); ++i) {
      for (std::size_t k = 1; k <= 2 && i + k < o.size(); ++k) {
        if (o.substr(i + 1, k) != std::u32string(k, o[i])) break;
        restores |= std::u32string(o).erase(i + 1, k) == in;
      }
    }
    EXPECT_TRUE(restores) << text::encode_utf8(o);
  }
}

TEST(Spacing, Examples) {
  EXPECT_EQ(outputs(ErrorTag::kSpacePseudoToEmpty, U"بی‌حوصله"),
            std::set<std::u32string>{U"بیحوصله"});
  EXPECT_EQ(outputs(ErrorTag::kSpaceWhiteToEmpty, U"کتاب خواندن"),
            std::set<std::u32string>{U"کتابخواندن"});
  EXPECT_TRUE(not_applicable(ErrorTag::kSpacePseudoToWhite, U"کتاب"));
  // No separator may be added at either end.
  EXPECT_TRUE(not_applicable(ErrorTag::kSpaceEmptyToPseudo, U"ب"));
  for (const auto& o : outputs(ErrorTag::kSpaceEmptyToWhite, U"کتاب", 500)) {
    EXPECT_NE(o.front(), U' ');
    EXPECT_NE(o.back(), U' ');
  }
}

TEST(Spacing, InversesRestoreInput) {
  const std::u32string word = U"بی‌حوصله";
  RngStream rng(5);
  const auto white = apply_error(ErrorTag::kSpacePseudoToWhite, word, rng, res());
  ASSERT_TRUE(white.applied());
  EXPECT_EQ(apply_error(ErrorTag::kSpaceWhiteToPseudo, *white.word, rng, res()).word, word);
  // Only one gap exists in a two-letter word, so the site is pinned.
  const auto pseudo = apply_error(ErrorTag::kSpaceEmptyToPseudo, U"از", rng, res());
  ASSERT_EQ(pseudo.word, std::u32string(U"ا‌ز"));
  EXPECT_EQ(apply_error(ErrorTag::kSpacePseudoToEmpty, *pseudo.word, rng, res()).word,
            std::u32string(U"از"));
}

TEST(FaToAr, Examples) {
  EXPECT_EQ(outputs(ErrorTag::kFaToAr, U"بی‌باک"),
            (std::set<std::u32string>{U"بي‌باک", U"بی‌باك"}));
  EXPECT_TRUE(not_applicable(ErrorTag::kFaToAr, U"123"));
  // Values are never keys, so a converted letter cannot convert again.
  const auto& m = res().tables().fa_to_ar;
  for (const auto& [from, to] : m) EXPECT_FALSE(m.contains(to));
}

TEST(SilentLetter, Examples) {
  EXPECT_EQ(outputs(ErrorTag::kSilentLetter, U"خواننده"), std::set<std::u32string>{U"خاننده"});
  EXPECT_EQ(outputs(ErrorTag::kSilentLetter, U"خواهر"), std::set<std::u32string>{U"خاهر"});
  EXPECT_TRUE(not_applicable(ErrorTag::kSilentLetter, U"برادر"));
}

TEST(CommonConfusion, Examples) {
  EXPECT_EQ(outputs(ErrorTag::kCommonConfusion, U"قانونگذار"),
            std::set<std::u32string>{U"قانونگزار"});
  EXPECT_EQ(outputs(ErrorTag::kCommonConfusion, U"سلام؟"), std::set<std::u32string>{U"سلام?"});
  EXPECT_TRUE(not_applicable(ErrorTag::kCommonConfusion, U"آب"));
}

TEST(ErrorModules, NeverReturnInput) {
  for (ErrorTag tag : all_error_tags()) {
    for (const auto& w : testing::fixture_words()) {
      RngStream rng(derive_seed({code(tag), w.size(), w.front()}));
      for (int i = 0; i < 20; ++i) {
        const auto o = apply_error(tag, w, rng, res());
        if (o.applied()) ASSERT_NE(*o.word, w) << tag_name(tag);
      }
    }
  }
}

}  // namespace
}  // namespace ptypo
