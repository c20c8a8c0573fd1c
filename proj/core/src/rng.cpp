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

#include "ptypo/rng.hpp"

#include <cassert>
#include <limits>

namespace ptypo {

std::int64_t RngStream::uniform(std::int64_t lo, std::int64_t hi) {
  assert(lo < hi);
  const auto range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  // Rejection sampling over the largest multiple of `range`.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

}  // namespace ptypo
