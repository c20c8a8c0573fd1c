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

// Static Persian resources consumed by the error modules: the keyboard
// layout with its adjacency relation and the confusion tables.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ptypo {

enum class SeparatorKind { kWhiteSpace, kPseudoSpace, kEmpty };

// The code point of a separator, or nullopt for kEmpty.
std::optional<char32_t> separator_code_point(SeparatorKind kind);

struct KeyboardLayout {
  std::vector<std::u32string> rows;
  // Horizontal shift of each row, in half-key units.
  std::vector<double> offsets;

  struct Cell {
    std::size_t row;
    std::size_t column;
  };
  std::optional<Cell> find(char32_t ch) const;

  bool operator==(const KeyboardLayout&) const = default;
};

enum class ConfusionKind { kSound, kShape };

struct SilentPattern {
  std::u32string trigger;
  std::size_t silent_index;  // position of the silent letter within trigger
  bool operator==(const SilentPattern&) const = default;
};

struct ConfusionPair {
  std::u32string pattern;
  std::u32string replacement;
  bool operator==(const ConfusionPair&) const = default;
};

struct ConfusionTables {
  std::vector<std::u32string> sound_groups;
  std::vector<std::u32string> shape_groups;
  std::map<char32_t, char32_t> fa_to_ar;
  std::vector<SilentPattern> silent_patterns;
  std::vector<ConfusionPair> common_confusions;

  bool operator==(const ConfusionTables&) const = default;
};

// Parsers validate every structural invariant and throw ParseError (with the
// offending line) or DataError.
KeyboardLayout parse_layout(std::string_view text);
ConfusionTables parse_tables(std::string_view text);

std::string serialize_layout(const KeyboardLayout& layout);
std::string serialize_tables(const ConfusionTables& tables);

// Throws DataError on invariant violation.
void validate(const KeyboardLayout& layout);
void validate(const ConfusionTables& tables);

// Characters whose key centres lie within one row and one key width of `ch`.
// x = column + offset/2. Throws DataError if `ch` is not on the layout.
std::vector<char32_t> adjacent_keys(const KeyboardLayout& layout, char32_t ch);

// The group of `ch` minus `ch` itself; empty when ungrouped. Sorted.
std::vector<char32_t> confusables(const ConfusionTables& tables, ConfusionKind kind,
                                  char32_t ch);

// Shipped defaults (also installed as resources/layout.txt and tables.txt).
std::string_view default_layout_text();
std::string_view default_tables_text();

// Validated layout and tables plus lookup caches built once at load time.
class Resources {
 public:
  Resources(KeyboardLayout layout, ConfusionTables tables);

  static Resources load(std::string_view layout_text, std::string_view tables_text);
  static Resources defaults();

  const KeyboardLayout& layout() const { return layout_; }
  const ConfusionTables& tables() const { return tables_; }

  bool on_layout(char32_t ch) const { return adjacency_.contains(ch); }
  // Empty for characters that are not on the layout.
  const std::vector<char32_t>& neighbors(char32_t ch) const;
  const std::vector<char32_t>& confusable(ConfusionKind kind, char32_t ch) const;
  std::optional<char32_t> arabic_form(char32_t ch) const;

 private:
  KeyboardLayout layout_;
  ConfusionTables tables_;
  std::unordered_map<char32_t, std::vector<char32_t>> adjacency_;
  std::unordered_map<char32_t, std::vector<char32_t>> sound_;
  std::unordered_map<char32_t, std::vector<char32_t>> shape_;
};

}  // namespace ptypo
