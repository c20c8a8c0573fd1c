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

// UTF-8 <-> UTF-32 conversion and Persian character classes.

#pragma once

#include <string>
#include <string_view>

namespace ptypo::text {

inline constexpr char32_t kWhiteSpace = U' ';
inline constexpr char32_t kPseudoSpace = U'\u200C';  // ZWNJ

// Strict decode: rejects overlong forms, surrogates and truncated sequences.
// Throws ParseError.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view chars);
std::string encode_utf8(char32_t ch);

bool is_valid_utf8(std::string_view bytes);

// Number of code points; the input must be valid UTF-8.
std::size_t utf8_length(std::string_view bytes);

bool is_separator(char32_t ch);

// Letters of the Arabic-script blocks plus ASCII letters.
bool is_letter(char32_t ch);

}  // namespace ptypo::text
