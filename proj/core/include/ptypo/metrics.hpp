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

// Token-level metrics for error-type labelling and for plain error
// detection (any error vs N/A).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptypo/labels.hpp"

namespace ptypo {

struct ClassMetrics {
  double precision = 0;  // 0 when nothing was predicted as this class
  double recall = 0;     // 0 when the class has no gold tokens
  std::size_t support = 0;  // gold tokens
  std::size_t predicted = 0;
  std::size_t correct = 0;
};

struct BinaryMetrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  std::size_t true_negative = 0;
  // Set when a denominator was zero and the rate was reported as 1.0.
  bool degenerate_precision = false;
  bool degenerate_recall = false;
};

struct Timings {
  double train_seconds = 0;
  double inference_seconds = 0;
  std::size_t tokens = 0;
  double per_token_seconds = 0;
  // Inference took no measurable time; per_token_seconds is the clock
  // resolution divided by the token count, an upper bound.
  bool below_resolution = false;
};

struct MetricsReport {
  std::size_t evaluated = 0;
  double token_accuracy = 0;
  // Classes occurring in gold or predictions, ascending LabelClass order.
  std::vector<std::pair<LabelClass, ClassMetrics>> per_class;
  // Unweighted means over per_class.
  double macro_precision = 0;
  double macro_recall = 0;
  // Pooled counts.
  double micro_precision = 0;
  double micro_recall = 0;
  BinaryMetrics binary;
  std::optional<Timings> timings;

  // Aligned "key: value" lines.
  std::string to_text() const;
  // "section\tkey\tvalue" rows.
  std::string to_tsv() const;
};

// An empty mask means every position counts. Throws DataError on length
// mismatch.
MetricsReport multiclass_metrics(std::span<const LabelClass> gold,
                                 std::span<const LabelClass> predicted,
                                 std::span<const std::uint8_t> mask = {});

BinaryMetrics binary_detection_metrics(std::span<const LabelClass> gold,
                                       std::span<const LabelClass> predicted,
                                       std::span<const std::uint8_t> mask = {});

// Throws DataError when tokens == 0.
Timings timing_report(double train_seconds, std::size_t tokens, double inference_seconds);

}  // namespace ptypo
