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

#include "ptypo/metrics.hpp"

#include <chrono>
#include <cstdio>
#include <map>

#include "ptypo/errors.hpp"

namespace ptypo {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_lengths(std::size_t gold, std::size_t predicted, std::size_t mask) {
  if (gold != predicted) {
    throw DataError("gold and predicted sequences differ in length (" + std::to_string(gold) +
                    " vs " + std::to_string(predicted) + ")");
  }
  if (mask != 0 && mask != gold) throw DataError("mask length does not match the labels");
}

bool counts(std::span<const std::uint8_t> mask, std::size_t i) {
  return mask.empty() || mask[i] != 0;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

struct Row {
  std::string section;
  std::string key;
  std::string value;
};

std::vector<Row> report_rows(const MetricsReport& r) {
  std::vector<Row> rows = {
      {"overall", "tokens", std::to_string(r.evaluated)},
      {"overall", "token_accuracy", number(r.token_accuracy)},
      {"overall", "macro_precision", number(r.macro_precision)},
      {"overall", "macro_recall", number(r.macro_recall)},
      {"overall", "micro_precision", number(r.micro_precision)},
      {"overall", "micro_recall", number(r.micro_recall)},
      {"detection", "accuracy", number(r.binary.accuracy)},
      {"detection", "precision", number(r.binary.precision)},
      {"detection", "recall", number(r.binary.recall)},
      {"detection", "true_positive", std::to_string(r.binary.true_positive)},
      {"detection", "false_positive", std::to_string(r.binary.false_positive)},
      {"detection", "false_negative", std::to_string(r.binary.false_negative)},
      {"detection", "true_negative", std::to_string(r.binary.true_negative)},
  };
  if (r.binary.degenerate_precision) rows.push_back({"detection", "precision_degenerate", "1"});
  if (r.binary.degenerate_recall) rows.push_back({"detection", "recall_degenerate", "1"});
  if (r.timings) {
    const auto& t = *r.timings;
    rows.push_back({"timing", "train_seconds", number(t.train_seconds)});
    rows.push_back({"timing", "inference_seconds", number(t.inference_seconds)});
    rows.push_back({"timing", "tokens", std::to_string(t.tokens)});
    rows.push_back({"timing", "per_token_seconds", scientific(t.per_token_seconds)});
    if (t.below_resolution) rows.push_back({"timing", "below_resolution", "1"});
  }
  for (const auto& [label, m] : r.per_class) {
    const std::string section = "class " + label.to_string();
    rows.push_back({section, "precision", number(m.precision)});
    rows.push_back({section, "recall", number(m.recall)});
    rows.push_back({section, "support", std::to_string(m.support)});
    rows.push_back({section, "predicted", std::to_string(m.predicted)});
  }
  return rows;
}

}  // namespace

MetricsReport multiclass_metrics(std::span<const LabelClass> gold,
                                 std::span<const LabelClass> predicted,
                                 std::span<const std::uint8_t> mask) {
  check_lengths(gold.size(), predicted.size(), mask.size());
  std::map<LabelClass, ClassMetrics> classes;
  MetricsReport r;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!counts(mask, i)) continue;
    ++r.evaluated;
    ++classes[gold[i]].support;
    ++classes[predicted[i]].predicted;
    if (gold[i] == predicted[i]) {
      ++classes[gold[i]].correct;
      ++correct;
    }
  }
  for (auto& [label, m] : classes) {
    m.precision = ratio(m.correct, m.predicted);
    m.recall = ratio(m.correct, m.support);
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.per_class.emplace_back(label, m);
  }
  if (!classes.empty()) {
    r.macro_precision /= static_cast<double>(classes.size());
    r.macro_recall /= static_cast<double>(classes.size());
  }
  // Every evaluated token is one prediction and one gold item, so the
  // pooled rates coincide with accuracy.
  r.token_accuracy = ratio(correct, r.evaluated);
  r.micro_precision = r.token_accuracy;
  r.micro_recall = r.token_accuracy;
  r.binary = binary_detection_metrics(gold, predicted, mask);
  return r;
}

BinaryMetrics binary_detection_metrics(std::span<const LabelClass> gold,
                                       std::span<const LabelClass> predicted,
                                       std::span<const std::uint8_t> mask) {
  check_lengths(gold.size(), predicted.size(), mask.size());
  BinaryMetrics m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!counts(mask, i)) continue;
    const bool is_error = !gold[i].is_na();
    const bool flagged = !predicted[i].is_na();
    if (is_error && flagged) {
      ++m.true_positive;
    } else if (flagged) {
      ++m.false_positive;
    } else if (is_error) {
      ++m.false_negative;
    } else {
      ++m.true_negative;
    }
  }
  const std::size_t total = m.true_positive + m.false_positive + m.false_negative + m.true_negative;
  m.accuracy = ratio(m.true_positive + m.true_negative, total);
  if (m.true_positive + m.false_positive == 0) {
    m.precision = 1.0;
    m.degenerate_precision = true;
  } else {
    m.precision = ratio(m.true_positive, m.true_positive + m.false_positive);
  }
  if (m.true_positive + m.false_negative == 0) {
    m.recall = 1.0;
    m.degenerate_recall = true;
  } else {
    m.recall = ratio(m.true_positive, m.true_positive + m.false_negative);
  }
  return m;
}

Timings timing_report(double train_seconds, std::size_t tokens, double inference_seconds) {
  if (tokens == 0) throw DataError("timing needs at least one token");
  Timings t;
  t.train_seconds = train_seconds;
  t.inference_seconds = inference_seconds;
  t.tokens = tokens;
  if (inference_seconds <= 0) {
    using Period = std::chrono::steady_clock::period;
    const double resolution = static_cast<double>(Period::num) / static_cast<double>(Period::den);
    t.below_resolution = true;
    t.per_token_seconds = resolution / static_cast<double>(tokens);
  } else {
    t.per_token_seconds = inference_seconds / static_cast<double>(tokens);
  }
  return t;
}

std::string MetricsReport::to_text() const {
  const auto rows = report_rows(*this);
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.section.size() + 1 + row.key.size());
  std::string out;
  for (const auto& row : rows) {
    std::string key = row.section + "." + row.key;
    key.resize(width, ' ');
    out += key + " : " + row.value + "\n";
  }
  return out;
}

std::string MetricsReport::to_tsv() const {
  std::string out = "section\tkey\tvalue\n";
  for (const auto& row : report_rows(*this)) {
    out += row.section + "\t" + row.key + "\t" + row.value + "\n";
  }
  return out;
}

}  // namespace ptypo
