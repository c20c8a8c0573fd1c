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

#include "ptypo/resources.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "ptypo/errors.hpp"
#include "ptypo/text.hpp"

namespace ptypo {
namespace {

struct Line {
  std::size_t number;
  std::string_view content;
};

// Non-blank, non-comment lines with trailing CR stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

std::vector<std::string_view> split_any(std::string_view s, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t start = s.find_first_not_of(delims, i);
    if (start == std::string_view::npos) break;
    std::size_t end = s.find_first_of(delims, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    i = end;
  }
  return out;
}

std::u32string decode_at(std::string_view s, std::size_t line) {
  try {
    return text::decode_utf8(s);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

char32_t single_char(std::string_view token, std::size_t line) {
  std::u32string cps = decode_at(token, line);
  if (cps.size() != 1) {
    throw ParseError("expected a single character, got '" + std::string(token) + "'", line);
  }
  return cps[0];
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join_chars(std::u32string_view chars) {
  std::string out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (i > 0) out += ' ';
    out += text::encode_utf8(chars[i]);
  }
  return out;
}

void validate_groups(const std::vector<std::u32string>& groups, std::string_view kind) {
  std::set<char32_t> seen;
  for (const auto& group : groups) {
    if (group.size() < 2) {
      throw DataError(std::string(kind) + " group needs at least two characters");
    }
    std::set<char32_t> members(group.begin(), group.end());
    if (members.size() != group.size()) {
      throw DataError(std::string(kind) + " group has a repeated character: " +
                      text::encode_utf8(group));
    }
    for (char32_t ch : group) {
      if (!seen.insert(ch).second) {
        throw DataError(std::string(kind) + " groups overlap on '" + text::encode_utf8(ch) + "'");
      }
    }
  }
}

std::unordered_map<char32_t, std::vector<char32_t>> group_index(
    const std::vector<std::u32string>& groups) {
  std::unordered_map<char32_t, std::vector<char32_t>> out;
  for (const auto& group : groups) {
    for (char32_t ch : group) {
      std::vector<char32_t> others;
      for (char32_t o : group) {
        if (o != ch) others.push_back(o);
      }
      std::sort(others.begin(), others.end());
      out[ch] = std::move(others);
    }
  }
  return out;
}

const std::vector<char32_t> kNone;

}  // namespace

std::optional<char32_t> separator_code_point(SeparatorKind kind) {
  switch (kind) {
    case SeparatorKind::kWhiteSpace:
      return text::kWhiteSpace;
    case SeparatorKind::kPseudoSpace:
      return text::kPseudoSpace;
    case SeparatorKind::kEmpty:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<KeyboardLayout::Cell> KeyboardLayout::find(char32_t ch) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t c = rows[r].find(ch);
    if (c != std::u32string::npos) return Cell{r, c};
  }
  return std::nullopt;
}

void validate(const KeyboardLayout& layout) {
  if (layout.rows.empty()) throw DataError("layout has no rows");
  if (layout.offsets.size() != layout.rows.size()) {
    throw DataError("layout needs one offset per row");
  }
  std::set<char32_t> seen;
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    if (layout.rows[r].empty()) throw DataError("layout row " + std::to_string(r) + " is empty");
    if (!std::isfinite(layout.offsets[r])) {
      throw DataError("layout offset of row " + std::to_string(r) + " is not finite");
    }
    for (char32_t ch : layout.rows[r]) {
      if (!seen.insert(ch).second) {
        throw DataError("duplicate character in layout: '" + text::encode_utf8(ch) + "'");
      }
    }
  }
}

void validate(const ConfusionTables& tables) {
  validate_groups(tables.sound_groups, "sound");
  validate_groups(tables.shape_groups, "shape");
  for (const auto& [from, to] : tables.fa_to_ar) {
    if (tables.fa_to_ar.contains(to)) {
      throw DataError("fa2ar value '" + text::encode_utf8(to) + "' is also a key");
    }
    if (from == to) throw DataError("fa2ar maps a character to itself");
  }
  for (const auto& p : tables.silent_patterns) {
    if (p.silent_index >= p.trigger.size()) {
      throw DataError("silent index out of range for '" + text::encode_utf8(p.trigger) + "'");
    }
  }
  for (const auto& c : tables.common_confusions) {
    if (c.pattern.empty()) throw DataError("empty confusion pattern");
    if (c.pattern == c.replacement) {
      throw DataError("confusion replacement equals its pattern: " + text::encode_utf8(c.pattern));
    }
  }
}

KeyboardLayout parse_layout(std::string_view text) {
  std::map<std::size_t, std::u32string> rows;
  std::map<std::size_t, double> offsets;
  for (const Line& line : content_lines(text)) {
    auto fields = split_any(line.content, " \t");
    if (fields[0] == "offset") {
      if (fields.size() != 3) throw ParseError("expected 'offset <row> <real>'", line.number);
      std::size_t row = parse_index(fields[1], line.number);
      double value = 0;
      auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), value);
      if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size() || !std::isfinite(value)) {
        throw ParseError("bad offset value '" + std::string(fields[2]) + "'", line.number);
      }
      if (!offsets.emplace(row, value).second) {
        throw ParseError("offset for row " + std::to_string(row) + " given twice", line.number);
      }
    } else if (fields[0] == "row") {
      if (fields.size() < 3) throw ParseError("expected 'row <row> <characters>'", line.number);
      std::size_t row = parse_index(fields[1], line.number);
      std::u32string keys;
      for (std::size_t i = 2; i < fields.size(); ++i) keys.push_back(single_char(fields[i], line.number));
      if (!rows.emplace(row, std::move(keys)).second) {
        throw ParseError("row " + std::to_string(row) + " given twice", line.number);
      }
    } else {
      throw ParseError("unknown directive '" + std::string(fields[0]) + "'", line.number);
    }
  }
  KeyboardLayout layout;
  for (const auto& [index, keys] : rows) {
    if (index != layout.rows.size()) {
      throw ParseError("row indices must be contiguous from 0; missing row " +
                       std::to_string(layout.rows.size()));
    }
    layout.rows.push_back(keys);
    auto it = offsets.find(index);
    layout.offsets.push_back(it == offsets.end() ? 0.0 : it->second);
  }
  for (const auto& [index, value] : offsets) {
    if (index >= layout.rows.size()) {
      throw ParseError("offset given for missing row " + std::to_string(index));
    }
  }
  validate(layout);
  return layout;
}

ConfusionTables parse_tables(std::string_view text) {
  ConfusionTables tables;
  std::string section;
  for (const Line& line : content_lines(text)) {
    std::string_view content = line.content;
    if (content.front() == '[') {
      if (content.back() != ']') throw ParseError("unterminated section header", line.number);
      section = std::string(content.substr(1, content.size() - 2));
      if (section != "sound" && section != "shape" && section != "fa2ar" &&
          section != "confusion" && section != "silent") {
        throw ParseError("unknown section [" + section + "]", line.number);
      }
      continue;
    }
    if (section.empty()) throw ParseError("content before the first section", line.number);
    if (section == "sound" || section == "shape") {
      std::u32string group;
      for (auto field : split_any(content, " \t")) group.push_back(single_char(field, line.number));
      (section == "sound" ? tables.sound_groups : tables.shape_groups).push_back(std::move(group));
      continue;
    }
    std::size_t tab = content.find('\t');
    if (tab == std::string_view::npos || content.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected two tab-separated fields", line.number);
    }
    std::string_view left = content.substr(0, tab);
    std::string_view right = content.substr(tab + 1);
    if (section == "fa2ar") {
      char32_t from = single_char(left, line.number);
      if (!tables.fa_to_ar.emplace(from, single_char(right, line.number)).second) {
        throw ParseError("fa2ar key repeated", line.number);
      }
    } else if (section == "confusion") {
      tables.common_confusions.push_back({decode_at(left, line.number), decode_at(right, line.number)});
    } else {
      tables.silent_patterns.push_back({decode_at(left, line.number), parse_index(right, line.number)});
    }
  }
  validate(tables);
  return tables;
}

std::string serialize_layout(const KeyboardLayout& layout) {
  std::string out;
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    out += "offset " + std::to_string(r) + " " + format_real(layout.offsets[r]) + "\n";
    out += "row " + std::to_string(r) + " " + join_chars(layout.rows[r]) + "\n";
  }
  return out;
}

std::string serialize_tables(const ConfusionTables& tables) {
  std::string out = "[sound]\n";
  for (const auto& g : tables.sound_groups) out += join_chars(g) + "\n";
  out += "[shape]\n";
  for (const auto& g : tables.shape_groups) out += join_chars(g) + "\n";
  out += "[fa2ar]\n";
  for (const auto& [from, to] : tables.fa_to_ar) {
    out += text::encode_utf8(from) + "\t" + text::encode_utf8(to) + "\n";
  }
  out += "[confusion]\n";
  for (const auto& c : tables.common_confusions) {
    out += text::encode_utf8(c.pattern) + "\t" + text::encode_utf8(c.replacement) + "\n";
  }
  out += "[silent]\n";
  for (const auto& s : tables.silent_patterns) {
    out += text::encode_utf8(s.trigger) + "\t" + std::to_string(s.silent_index) + "\n";
  }
  return out;
}

std::vector<char32_t> adjacent_keys(const KeyboardLayout& layout, char32_t ch) {
  auto cell = layout.find(ch);
  if (!cell) throw DataError("character '" + text::encode_utf8(ch) + "' is not on the layout");
  const double x0 = static_cast<double>(cell->column) + layout.offsets[cell->row] / 2.0;
  std::vector<char32_t> out;
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    if (r + 1 < cell->row || r > cell->row + 1) continue;
    for (std::size_t c = 0; c < layout.rows[r].size(); ++c) {
      char32_t other = layout.rows[r][c];
      if (other == ch) continue;
      const double x = static_cast<double>(c) + layout.offsets[r] / 2.0;
      if (std::abs(x - x0) <= 1.0) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char32_t> confusables(const ConfusionTables& tables, ConfusionKind kind,
                                  char32_t ch) {
  const auto& groups = kind == ConfusionKind::kSound ? tables.sound_groups : tables.shape_groups;
  for (const auto& group : groups) {
    if (group.find(ch) == std::u32string::npos) continue;
    std::vector<char32_t> out;
    for (char32_t o : group) {
      if (o != ch) out.push_back(o);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  return {};
}

Resources::Resources(KeyboardLayout layout, ConfusionTables tables)
    : layout_(std::move(layout)), tables_(std::move(tables)) {
  validate(layout_);
  validate(tables_);
  for (const auto& row : layout_.rows) {
    for (char32_t ch : row) adjacency_[ch] = adjacent_keys(layout_, ch);
  }
  sound_ = group_index(tables_.sound_groups);
  shape_ = group_index(tables_.shape_groups);
}

Resources Resources::load(std::string_view layout_text, std::string_view tables_text) {
  return Resources(parse_layout(layout_text), parse_tables(tables_text));
}

Resources Resources::defaults() { return load(default_layout_text(), default_tables_text()); }

const std::vector<char32_t>& Resources::neighbors(char32_t ch) const {
  auto it = adjacency_.find(ch);
  return it == adjacency_.end() ? kNone : it->second;
}

const std::vector<char32_t>& Resources::confusable(ConfusionKind kind, char32_t ch) const {
  const auto& index = kind == ConfusionKind::kSound ? sound_ : shape_;
  auto it = index.find(ch);
  return it == index.end() ? kNone : it->second;
}

std::optional<char32_t> Resources::arabic_form(char32_t ch) const {
  auto it = tables_.fa_to_ar.find(ch);
  if (it == tables_.fa_to_ar.end()) return std::nullopt;
  return it->second;
}

}  // namespace ptypo
