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

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "ptypo/corpus.hpp"
#include "ptypo/errors.hpp"

namespace ptypo {
namespace {

std::string header() { return std::string(kCorpusHeader) + "\n"; }

TEST(Corpus, ParsesSentences) {
  const auto c = parse_corpus(header() +
                              "1\t10\tمن\tPRO\tx\n2\t10\tرفتم\tV\tx\n"
                              "1\t11\tمی‌کند\tV\tx\n");
  ASSERT_EQ(c.sentences.size(), 2u);
  EXPECT_EQ(c.sentences[0].id, 10u);
  EXPECT_EQ(c.sentences[1].tokens[0].word, "می‌کند");
  EXPECT_EQ(c.token_count(), 3u);
  EXPECT_EQ(format_corpus(c), header() + "1\t10\tمن\tPRO\tx\n2\t10\tرفتم\tV\tx\n"
                                         "1\t11\tمی‌کند\tV\tx\n");
}

TEST(Corpus, ErrorsNameTheLine) {
  try {
    parse_corpus(header() + "1\t1\tمن\tPRO\tx\n2\t1\tرفتم\tx\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_corpus("1\t1\tمن\tPRO\tx\n"), ParseError);
  EXPECT_THROW(parse_corpus(header() + "0\t1\tمن\tPRO\tx\n"), ParseError);
  EXPECT_THROW(parse_corpus(header() + "1\t1\t\xFF\tPRO\tx\n"), ParseError);
}

TEST(Corpus, Statistics) {
  EXPECT_EQ(corpus_statistics(Corpus{}), CorpusStats{});
  std::string text = header();
  const char* rows[] = {"من\tPRO", "کتاب\tN", "را\tPOSTP", "خواندم\tV", ".\tPUNC",
                        "او\tPRO", "کتاب\tN", "خرید\tV", "و\tCONJ",   "رفت\tV"};
  for (int i = 0; i < 10; ++i) {
    text += std::to_string(i % 5 + 1) + "\t" + std::to_string(i / 5 + 1) + "\t" + rows[i] + "\tx\n";
  }
  const auto stats = corpus_statistics(parse_corpus(text));
  EXPECT_EQ(stats.word_count, 10u);
  EXPECT_EQ(stats.sentence_count, 2u);
  EXPECT_EQ(stats.unique_word_count, 9u);
  EXPECT_EQ(stats.distinct_pos_count, 6u);
  EXPECT_EQ(stats.pos_histogram.at("V"), 3u);
  EXPECT_EQ(stats.word_length_histogram.at(1), 2u);
}

TEST(Corpus, ThreePosFixture) {
  std::string text = header();
  const char* pos[] = {"N", "V", "N", "P", "N", "V", "P", "N", "N", "V"};
  for (int i = 0; i < 10; ++i) text += std::to_string(i + 1) + "\t1\tw" + std::to_string(i) + "\t" + pos[i] + "\tx\n";
  EXPECT_EQ(corpus_statistics(parse_corpus(text)).distinct_pos_count, 3u);
}

TEST(Parallel, TableRowFormat) {
  ParallelCorpus c;
  LabeledToken t;
  t.base = {3, 35305, "را", "POSTP", "PDTB"};
  t.misspelt = "ا";
  t.label = LabelClass::of({ErrorTag::kDeletion});
  LabeledToken na;
  na.base = {4, 35305, "می‌کنم", "V", "PDTB"};
  na.misspelt = na.base.word;
  c.sentences.push_back({35305, {t, na}});
  const std::string text = format_parallel(c);
  EXPECT_EQ(text, std::string(kParallelHeader) +
                      "\n3\t35305\tرا\tPOSTP\tPDTB\tا\tdeletion\n"
                      "4\t35305\tمی‌کنم\tV\tPDTB\tمی‌کنم\tN/A\n");
  EXPECT_EQ(parse_parallel(text), c);
}

TEST(Parallel, NaMustKeepTheWord) {
  EXPECT_THROW(parse_parallel(std::string(kParallelHeader) + "\n1\t1\tمن\tPRO\tx\tمم\tN/A\n"),
               ParseError);
}

TEST(Parallel, ViewsOfACorpus) {
  const Corpus c = testing::fixture_corpus();
  const ParallelCorpus p = unlabeled(c);
  EXPECT_EQ(originals(p), c);
  for (const auto& s : p.sentences) {
    for (const auto& t : s.tokens) EXPECT_TRUE(t.label.is_na());
  }
}

TEST(Parallel, FixtureRoundTripFromFile) {
  const auto path = testing::data_dir() / "fixtures" / "synthetic_500.tsv";
  const std::string bytes = read_file(path);
  EXPECT_EQ(format_corpus(parse_corpus(bytes)), bytes);
}

TEST(Split, Sizes) {
  const std::vector<double> r{0.6, 0.2, 0.2};
  EXPECT_EQ(split_sizes(10, r), (std::vector<std::size_t>{6, 2, 2}));
  const auto odd = split_sizes(11, r);
  EXPECT_EQ(odd[0] + odd[1] + odd[2], 11u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(std::fabs(odd[i] - 11 * r[i]), 1.0);
  EXPECT_THROW(split_sizes(10, std::vector<double>{0.5, 0.4}), DataError);
  EXPECT_THROW(split_sizes(10, std::vector<double>{1.2, -0.2}), DataError);
  EXPECT_THROW(split_sizes(2, r), DataError);
}

TEST(Split, PartitionIsDeterministicAndDisjoint) {
  const std::vector<double> r{0.6, 0.2, 0.2};
  const auto a = split_indices(97, r, 5);
  EXPECT_EQ(a, split_indices(97, r, 5));
  EXPECT_NE(a, split_indices(97, r, 6));
  std::set<std::size_t> all;
  std::size_t n = 0;
  for (const auto& part : a) {
    EXPECT_TRUE(std::is_sorted(part.begin(), part.end()));
    all.insert(part.begin(), part.end());
    n += part.size();
  }
  EXPECT_EQ(n, 97u);
  EXPECT_EQ(all.size(), 97u);

  const Corpus c = testing::fixture_corpus();
  const auto parts = split_corpus(c, r, 1);
  EXPECT_EQ(parts[0].sentences.size() + parts[1].sentences.size() + parts[2].sentences.size(),
            c.sentences.size());
}

}  // namespace
}  // namespace ptypo
