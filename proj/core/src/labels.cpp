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

#include "ptypo/labels.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "ptypo/errors.hpp"

namespace ptypo {
namespace {

constexpr std::string_view kNaName = "N/A";
constexpr std::string_view kTagSeparator = ", ";

}  // namespace

LabelClass LabelClass::of(std::vector<ErrorTag> tags) {
  std::sort(tags.begin(), tags.end(), [](ErrorTag a, ErrorTag b) { return code(a) < code(b); });
  LabelClass label;
  label.tags_ = std::move(tags);
  return label;
}

LabelClass LabelClass::parse(std::string_view text) {
  if (text == kNaName) return na();
  if (text.empty()) throw ParseError("empty typo type");
  std::vector<ErrorTag> tags;
  while (true) {
    std::size_t sep = text.find(kTagSeparator);
    std::string_view name = text.substr(0, sep);
    auto tag = tag_from_name(name);
    if (!tag) throw ParseError("unknown typo type '" + std::string(name) + "'");
    tags.push_back(*tag);
    if (sep == std::string_view::npos) break;
    text.remove_prefix(sep + kTagSeparator.size());
  }
  return of(std::move(tags));
}

std::string LabelClass::to_string() const {
  if (is_na()) return std::string(kNaName);
  std::string out;
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (i > 0) out += kTagSeparator;
    out += tag_name(tags_[i]);
  }
  return out;
}

std::strong_ordering LabelClass::operator<=>(const LabelClass& other) const {
  if (auto c = tags_.size() <=> other.tags_.size(); c != 0) return c;
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (auto c = code(tags_[i]) <=> code(other.tags_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

LabelClass canonical_label(std::span<const ErrorTag> tags, std::size_t max_errors) {
  if (tags.size() > max_errors) {
    throw DataError("label has " + std::to_string(tags.size()) + " tags, more than the cap of " +
                    std::to_string(max_errors));
  }
  return LabelClass::of({tags.begin(), tags.end()});
}

ClassRegistry::ClassRegistry() {
  classes_.push_back(LabelClass::na());
  index_.emplace(LabelClass::na().to_string(), 0);
}

std::optional<std::size_t> ClassRegistry::find(const LabelClass& label) const {
  auto it = index_.find(label.to_string());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ClassRegistry::intern(const LabelClass& label) {
  if (auto i = find(label)) return *i;
  if (frozen_) throw DataError("class '" + label.to_string() + "' is not in the frozen registry");
  classes_.push_back(label);
  index_.emplace(label.to_string(), classes_.size() - 1);
  return classes_.size() - 1;
}

std::size_t ClassRegistry::index_of(const LabelClass& label) const {
  if (auto i = find(label)) return *i;
  throw DataError("class '" + label.to_string() + "' is not in the registry");
}

std::string ClassRegistry::to_label_map() const {
  std::string out;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    out += std::to_string(i) + "\t" + classes_[i].to_string() + "\n";
  }
  return out;
}

ClassRegistry ClassRegistry::from_label_map(std::string_view text) {
  ClassRegistry registry;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected '<index>\\t<class>'", line_no);
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, index);
    if (ec != std::errc{} || ptr != line.data() + tab) throw ParseError("bad class index", line_no);
    LabelClass label;
    try {
      label = LabelClass::parse(line.substr(tab + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (index == 0) {
      if (!label.is_na()) throw ParseError("index 0 must be N/A", line_no);
      continue;
    }
    if (index != registry.size()) {
      throw ParseError("class indices must be contiguous; expected " +
                           std::to_string(registry.size()),
                       line_no);
    }
    if (registry.find(label)) throw ParseError("duplicate class '" + label.to_string() + "'", line_no);
    registry.intern(label);
  }
  registry.freeze();
  return registry;
}

std::uint64_t ClassRegistry::hash() const { return fnv1a64(to_label_map()); }

ClassRegistry build_registry(std::span<const LabelClass> labels) {
  std::set<LabelClass> distinct(labels.begin(), labels.end());
  ClassRegistry registry;
  for (const auto& label : distinct) registry.intern(label);
  registry.freeze();
  return registry;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ptypo
