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

// Binary model container.
//
//   magic "PTYPOMDL", version byte
//   config    : u32 count, (key, value) string pairs
//   vocab     : u32 count, word strings; u32 count, char strings
//   registry  : u64 label-map hash, label-map string
//   tensors   : u32 count, (name, u32 rows, u32 cols, rows*cols f32)
//   checksum  : u64 FNV-1a of every preceding byte
//
// Integers and floats are little-endian; strings are u32 length + bytes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ptypo/train.hpp"

namespace ptypo {

inline constexpr std::uint8_t kModelFormatVersion = 1;

std::string serialize_model(const Model& model);
// Throws ParseError on bad magic, version, checksum, shape or truncation.
Model parse_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace ptypo
