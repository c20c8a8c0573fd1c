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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ptypo/error_modules.hpp"

namespace ptypo {

// N/A or a multiset of error tags kept sorted by tag code.
class LabelClass {
 public:
  LabelClass() = default;  // N/A

  static LabelClass na() { return {}; }
  // Sorts `tags`; any size is accepted here, see canonical_label for the cap.
  static LabelClass of(std::vector<ErrorTag> tags);
  // Parses "N/A" or tag names joined by ", "; throws ParseError.
  static LabelClass parse(std::string_view text);

  bool is_na() const { return tags_.empty(); }
  std::size_t size() const { return tags_.size(); }
  std::span<const ErrorTag> tags() const { return tags_; }

  std::string to_string() const;

  bool operator==(const LabelClass&) const = default;
  // Shorter multisets first, then lexicographic by tag code.
  std::strong_ordering operator<=>(const LabelClass& other) const;

 private:
  std::vector<ErrorTag> tags_;
};

// Empty -> N/A; throws DataError when tags.size() > max_errors.
LabelClass canonical_label(std::span<const ErrorTag> tags, std::size_t max_errors);

// Index 0 is always N/A. A frozen registry rejects unseen classes.
class ClassRegistry {
 public:
  ClassRegistry();

  // Index of `label`, appending it first if unseen. Throws DataError when
  // frozen and unseen.
  std::size_t intern(const LabelClass& label);
  // Throws DataError when unseen.
  std::size_t index_of(const LabelClass& label) const;
  std::optional<std::size_t> find(const LabelClass& label) const;
  const LabelClass& at(std::size_t index) const { return classes_.at(index); }

  std::size_t size() const { return classes_.size(); }
  std::span<const LabelClass> classes() const { return classes_; }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  // One line per class: "<index>\t<class string>\n".
  std::string to_label_map() const;
  // Returns a frozen registry; throws ParseError.
  static ClassRegistry from_label_map(std::string_view text);

  // FNV-1a 64 of to_label_map().
  std::uint64_t hash() const;

  bool operator==(const ClassRegistry& other) const { return classes_ == other.classes_; }

 private:
  std::vector<LabelClass> classes_;
  std::unordered_map<std::string, std::size_t> index_;
  bool frozen_ = false;
};

// N/A followed by the distinct labels in ascending LabelClass order, frozen.
ClassRegistry build_registry(std::span<const LabelClass> labels);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace ptypo
