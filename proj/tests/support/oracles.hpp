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

// Brute-force reference implementations used by the unit and acceptance
// tests. They enumerate every outcome of a module together with its exact
// probability, working from the raw layout and tables rather than the
// library's caches.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ptypo/corpus.hpp"
#include "ptypo/error_modules.hpp"
#include "ptypo/resources.hpp"

namespace ptypo::testing {

// Keys within one row and one key width, from the row strings and offsets.
bool keys_adjacent(const KeyboardLayout& layout, char32_t a, char32_t b);

// output -> probability, for a module that picks a site uniformly and then a
// choice uniformly. Empty when the module has no legal site.
std::map<std::u32string, double> module_outcomes(ErrorTag tag, std::u32string_view word,
                                                 const KeyboardLayout& layout,
                                                 const ConfusionTables& tables);

// Length change every output of the module must show, as {min, max}.
std::pair<int, int> length_delta_bounds(ErrorTag tag, std::u32string_view word,
                                        const ConfusionTables& tables);

std::filesystem::path data_dir();
Corpus fixture_corpus();           // data/fixtures/synthetic_500.tsv
std::vector<std::u32string> fixture_words();  // distinct words, first-seen order

}  // namespace ptypo::testing
