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

#include <filesystem>

#include "oracles.hpp"
#include "ptypo/artifact.hpp"
#include "ptypo/errors.hpp"
#include "ptypo/generator.hpp"

namespace ptypo {
namespace {

Model sample_model() {
  GeneratorConfig gc;
  gc.seed = 3;
  Corpus c = testing::fixture_corpus();
  c.sentences.resize(60);
  const auto data = generate(c, gc, Resources::defaults()).first;
  std::vector<LabelClass> labels;
  for (const auto& s : data.sentences) {
    for (const auto& t : s.tokens) labels.push_back(t.label);
  }
  Model m;
  m.config.word_emb_dim = 6;
  m.config.char_emb_dim = 3;
  m.config.lstm_hidden = 5;
  m.config.dropout_rate = 0.1;
  m.registry = build_registry(labels);
  m.config.num_classes = m.registry.size();
  m.vocab = build_vocabs(data, m.config);
  m.params = init_params<float>(m.config, m.vocab.word_count(), m.vocab.char_count(), 2);
  return m;
}

TEST(Artifact, RoundTrip) {
  const Model m = sample_model();
  const std::string bytes = serialize_model(m);
  EXPECT_EQ(bytes.substr(0, 8), "PTYPOMDL");
  const Model back = parse_model(bytes);
  EXPECT_EQ(back.config, m.config);
  EXPECT_EQ(back.vocab, m.vocab);
  EXPECT_EQ(back.registry, m.registry);
  EXPECT_EQ(back.params, m.params);
  EXPECT_EQ(serialize_model(back), bytes);
}

TEST(Artifact, DetectsDamage) {
  const std::string bytes = serialize_model(sample_model());
  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  EXPECT_THROW(parse_model(flipped), ParseError);
  EXPECT_THROW(parse_model(bytes.substr(0, bytes.size() - 3)), ParseError);
  EXPECT_THROW(parse_model(bytes + "x"), ParseError);
  std::string magic = bytes;
  magic[0] = 'Q';
  EXPECT_THROW(parse_model(magic), ParseError);
  EXPECT_THROW(parse_model(""), ParseError);
}

TEST(Artifact, SaveLoadFile) {
  const Model m = sample_model();
  const auto path = std::filesystem::temp_directory_path() / "ptypo_artifact_test.bin";
  save_model(path, m);
  EXPECT_EQ(serialize_model(load_model(path)), serialize_model(m));
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), Error);
}

}  // namespace
}  // namespace ptypo
