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

#include "ptypo/artifact.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>

#include "ptypo/corpus.hpp"
#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

constexpr std::string_view kMagic = "PTYPOMDL";

class Writer {
 public:
  void bytes(std::string_view b) { out_.append(b); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::string take() { return std::move(out_); }
  const std::string& data() const { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::string_view bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw ParseError("model file is truncated", 0);
    auto out = in_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes(1)[0]); }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str() { return std::string(bytes(u32())); }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

// Config fields by name, in file order.
struct ConfigField {
  const char* name;
  std::function<std::string(const ModelConfig&)> get;
  std::function<void(ModelConfig&, const std::string&)> set;
};

ConfigField size_field(const char* name, std::size_t ModelConfig::*member) {
  return {name, [member](const ModelConfig& c) { return std::to_string(c.*member); },
          [member, name](ModelConfig& c, const std::string& v) {
            try {
              std::size_t used = 0;
              c.*member = std::stoull(v, &used);
              if (used != v.size()) throw std::invalid_argument(v);
            } catch (const std::exception&) {
              throw ParseError(std::string("bad value for config key ") + name, 0);
            }
          }};
}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = [] {
    std::vector<ConfigField> f;
    f.push_back(size_field("max_seq_len", &ModelConfig::max_seq_len));
    f.push_back(size_field("max_word_chars", &ModelConfig::max_word_chars));
    f.push_back(size_field("word_emb_dim", &ModelConfig::word_emb_dim));
    f.push_back(size_field("char_emb_dim", &ModelConfig::char_emb_dim));
    f.push_back(size_field("lstm_hidden", &ModelConfig::lstm_hidden));
    f.push_back(size_field("lstm_layers", &ModelConfig::lstm_layers));
    f.push_back({"dropout_rate",
                 [](const ModelConfig& c) {
                   char buf[40];
                   std::snprintf(buf, sizeof buf, "%.17g", c.dropout_rate);
                   return std::string(buf);
                 },
                 [](ModelConfig& c, const std::string& v) {
                   char* end = nullptr;
                   c.dropout_rate = std::strtod(v.c_str(), &end);
                   if (v.empty() || end != v.c_str() + v.size()) {
                     throw ParseError("bad value for config key dropout_rate", 0);
                   }
                 }});
    f.push_back(size_field("num_classes", &ModelConfig::num_classes));
    f.push_back(size_field("max_word_vocab", &ModelConfig::max_word_vocab));
    f.push_back(size_field("min_word_freq", &ModelConfig::min_word_freq));
    f.push_back(size_field("max_char_vocab", &ModelConfig::max_char_vocab));
    return f;
  }();
  return fields;
}

}  // namespace

std::string serialize_model(const Model& model) {
  Writer w;
  w.bytes(kMagic);
  w.u8(kModelFormatVersion);

  const auto& fields = config_fields();
  w.u32(static_cast<std::uint32_t>(fields.size()));
  for (const auto& f : fields) {
    w.str(f.name);
    w.str(f.get(model.config));
  }

  const auto words = model.vocab.words();
  w.u32(static_cast<std::uint32_t>(words.size()));
  for (const auto& word : words) w.str(word);
  const auto chars = model.vocab.chars();
  w.u32(static_cast<std::uint32_t>(chars.size()));
  for (char32_t c : chars) w.str(text::encode_utf8(c));

  const std::string label_map = model.registry.to_label_map();
  w.u64(fnv1a64(label_map));
  w.str(label_map);

  const auto& tensors = model.params.tensors();
  w.u32(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    w.str(t.name);
    w.u32(static_cast<std::uint32_t>(t.value.rows()));
    w.u32(static_cast<std::uint32_t>(t.value.cols()));
    for (Eigen::Index i = 0; i < t.value.size(); ++i) w.f32(t.value.data()[i]);
  }
  w.u64(fnv1a64(w.data()));
  return w.take();
}

Model parse_model(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 1 + 8 || bytes.substr(0, kMagic.size()) != kMagic) {
    throw ParseError("not a model file", 0);
  }
  const auto body = bytes.substr(0, bytes.size() - 8);
  Reader tail(bytes.substr(bytes.size() - 8));
  if (tail.u64() != fnv1a64(body)) throw ParseError("model checksum mismatch", 0);

  Reader r(body);
  r.bytes(kMagic.size());
  if (const auto version = r.u8(); version != kModelFormatVersion) {
    throw ParseError("unsupported model format version " + std::to_string(version), 0);
  }

  Model model;
  const auto& fields = config_fields();
  const std::uint32_t n_config = r.u32();
  std::map<std::string, std::string> values;
  for (std::uint32_t i = 0; i < n_config; ++i) {
    std::string key = r.str();
    values[std::move(key)] = r.str();
  }
  if (values.size() != fields.size()) throw ParseError("model config has unexpected keys", 0);
  for (const auto& f : fields) {
    auto it = values.find(f.name);
    if (it == values.end()) throw ParseError(std::string("model config lacks ") + f.name, 0);
    f.set(model.config, it->second);
  }
  try {
    model.config.validate();
  } catch (const DataError& e) {
    throw ParseError(std::string("invalid model config: ") + e.what(), 0);
  }

  std::vector<std::string> words(r.u32());
  for (auto& word : words) word = r.str();
  std::u32string chars;
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    const std::u32string c = text::decode_utf8(r.str());
    if (c.size() != 1) throw ParseError("vocabulary character entry is not one code point", 0);
    chars += c;
  }
  try {
    model.vocab = Vocab(std::move(words), std::move(chars));
  } catch (const DataError& e) {
    throw ParseError(std::string("invalid model vocabulary: ") + e.what(), 0);
  }

  const std::uint64_t hash = r.u64();
  const std::string label_map = r.str();
  if (fnv1a64(label_map) != hash) throw ParseError("label-map hash mismatch", 0);
  model.registry = ClassRegistry::from_label_map(label_map);
  if (model.registry.size() != model.config.num_classes) {
    throw ParseError("label map does not match num_classes", 0);
  }

  model.params = ModelParams<float>(model.config, model.vocab.word_count(), model.vocab.char_count());
  auto& tensors = model.params.tensors();
  if (r.u32() != tensors.size()) throw ParseError("unexpected tensor count", 0);
  for (auto& t : tensors) {
    const std::string name = r.str();
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (name != t.name || rows != t.value.rows() || cols != t.value.cols()) {
      throw ParseError("tensor " + name + " does not match the configured shapes", 0);
    }
    for (Eigen::Index i = 0; i < t.value.size(); ++i) t.value.data()[i] = r.f32();
  }
  if (!r.done()) throw ParseError("trailing bytes in model file", 0);
  if (!model.params.all_finite()) throw ParseError("model holds non-finite weights", 0);
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  write_file(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace ptypo
