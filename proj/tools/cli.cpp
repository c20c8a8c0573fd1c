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

#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ptypo/artifact.hpp"
#include "ptypo/corpus.hpp"
#include "ptypo/errors.hpp"
#include "ptypo/generator.hpp"
#include "ptypo/metrics.hpp"
#include "ptypo/resources.hpp"
#include "ptypo/synthetic.hpp"
#include "ptypo/train.hpp"

namespace ptypo::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool starts_with_line(std::string_view text, std::string_view header) {
  if (!text.starts_with(header)) return false;
  const auto rest = text.substr(header.size());
  return rest.empty() || rest.front() == '\n' || rest.starts_with("\r\n");
}

Resources load_resources() {
  const char* dir = std::getenv(kResourceDirEnv);
  if (dir == nullptr || *dir == '\0') return Resources::defaults();
  const fs::path root(dir);
  return Resources::load(read_file(root / "layout.txt"), read_file(root / "tables.txt"));
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(value, &used);
    if (used == value.size() && value.front() != '-') return v;
  } catch (const std::exception&) {
  }
  throw UsageError(key + " expects a non-negative integer, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(key + " expects a number, got '" + value + "'");
}

// key=value lines; '#' starts a comment line.
std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::map<std::string, std::string> out;
  std::istringstream in(read_file(path));
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line lacks '='", line_no);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// Training settings reachable from both the config file and flags.
struct Setting {
  std::string key;
  std::string help;
  std::function<void(const std::string&)> apply;
};

std::vector<Setting> training_settings(ModelConfig& m, TrainConfig& t) {
  auto size = [](std::size_t& field) {
    return [&field](const std::string& key, const std::string& v) { field = parse_size(key, v); };
  };
  std::vector<Setting> out;
  auto add = [&out](std::string key, std::string help,
                    std::function<void(const std::string&, const std::string&)> fn) {
    out.push_back({key, std::move(help), [key, fn](const std::string& v) { fn(key, v); }});
  };
  add("epochs", "training epochs", size(t.epochs));
  add("batch_size", "sentences per batch", size(t.batch_size));
  add("learning_rate", "Adam step size",
      [&t](const std::string& k, const std::string& v) { t.adam.learning_rate = parse_double(k, v); });
  add("seed", "seed for initialization, shuffling and dropout",
      [&t](const std::string& k, const std::string& v) { t.seed = parse_size(k, v); });
  add("threads", "worker threads",
      [&t](const std::string& k, const std::string& v) {
        t.threads = static_cast<unsigned>(std::max<std::size_t>(1, parse_size(k, v)));
      });
  add("stop_at_train_accuracy", "stop once training accuracy reaches this value",
      [&t](const std::string& k, const std::string& v) {
        t.stop_at_train_accuracy = parse_double(k, v);
      });
  add("max_seq_len", "tokens per window", size(m.max_seq_len));
  add("max_word_chars", "characters kept per word", size(m.max_word_chars));
  add("word_emb_dim", "word embedding width", size(m.word_emb_dim));
  add("char_emb_dim", "character embedding width", size(m.char_emb_dim));
  add("lstm_hidden", "LSTM units per direction", size(m.lstm_hidden));
  add("lstm_layers", "stacked bidirectional layers", size(m.lstm_layers));
  add("dropout_rate", "spatial dropout rate",
      [&m](const std::string& k, const std::string& v) { m.dropout_rate = parse_double(k, v); });
  add("max_word_vocab", "word vocabulary cap including PAD and UNK", size(m.max_word_vocab));
  add("min_word_freq", "rarer training words map to UNK", size(m.min_word_freq));
  add("max_char_vocab", "character vocabulary cap including PAD and UNK", size(m.max_char_vocab));
  return out;
}

std::string flag_for(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return key == "learning_rate" ? flag + ",--lr" : flag;
}

template <typename Fn>
void as_usage(Fn&& fn) {
  try {
    fn();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::vector<std::string>> misspelt_sentences(const ParallelCorpus& corpus) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) {
    auto& words = out.emplace_back();
    for (const auto& t : s.tokens) words.push_back(t.misspelt);
  }
  return out;
}

std::string stats_text(const CorpusStats& s) {
  std::ostringstream out;
  out << "sentences: " << s.sentence_count << "\n"
      << "words: " << s.word_count << "\n"
      << "unique_words: " << s.unique_word_count << "\n"
      << "distinct_pos: " << s.distinct_pos_count << "\n"
      << "word_length_histogram:\n";
  for (const auto& [len, n] : s.word_length_histogram) out << "  " << len << "\t" << n << "\n";
  out << "pos_histogram:\n";
  for (const auto& [pos, n] : s.pos_histogram) out << "  " << pos << "\t" << n << "\n";
  return out.str();
}

Corpus load_any_corpus(const fs::path& path) {
  const std::string text = read_file(path);
  if (starts_with_line(text, kParallelHeader)) return originals(parse_parallel(text));
  return parse_corpus(text);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic Persian typo generation and error-type detection", "ptypo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // stats
  auto* stats = app.add_subcommand("stats", "Print corpus statistics");
  std::string stats_in;
  stats->add_option("corpus", stats_in, "Corpus or parallel TSV")->required();

  // generate
  auto* gen = app.add_subcommand("generate", "Corrupt a clean corpus into a parallel corpus");
  std::string gen_in, gen_out, gen_report, gen_labels, gen_tags;
  GeneratorConfig gen_cfg;
  gen->add_option("corpus", gen_in, "Clean corpus TSV")->required();
  gen->add_option("--s", gen_cfg.fraction, "Fraction of tokens to corrupt")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--m", gen_cfg.max_errors, "Maximum errors per word")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Parallel corpus output")->required();
  gen->add_option("--report", gen_report, "Counts report (JSON when the path ends in .json)");
  gen->add_option("--labels", gen_labels, "Write the label map of the generated classes");
  gen->add_option("--tags", gen_tags, "Comma-separated error types to enable (default all)");
  gen->add_option("--threads", gen_cfg.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // split
  auto* split = app.add_subcommand("split", "Split a parallel corpus by sentence");
  std::string split_in, split_dir;
  std::vector<double> ratios{0.6, 0.2, 0.2};
  std::uint64_t split_seed = 0;
  split->add_option("parallel", split_in, "Parallel corpus TSV")->required();
  split->add_option("--ratios", ratios, "Part ratios summing to 1")
      ->delimiter(',')
      ->capture_default_str();
  split->add_option("--seed", split_seed, "Random seed")->capture_default_str();
  split->add_option("--out-dir", split_dir, "Directory for train/val/test TSV files")->required();

  // train
  auto* tr = app.add_subcommand("train", "Train the error-type detector");
  std::string tr_train, tr_val, tr_config, tr_model, tr_history, tr_labels;
  ModelConfig model_cfg;
  TrainConfig train_cfg;
  std::map<std::string, std::string> given;
  const auto settings = training_settings(model_cfg, train_cfg);
  tr->add_option("--train", tr_train, "Training parallel corpus")->required();
  tr->add_option("--val", tr_val, "Validation parallel corpus")->required();
  tr->add_option("--config", tr_config, "key=value file; flags override it");
  tr->add_option("--out-model", tr_model, "Model artifact output")->required();
  tr->add_option("--history", tr_history, "Per-epoch history TSV output");
  tr->add_option("--labels", tr_labels, "Label map to train against (default: from the data)");
  std::map<std::string, CLI::Option*> setting_opts;
  for (const auto& s : settings) {
    setting_opts[s.key] = tr->add_option(flag_for(s.key), given[s.key], s.help);
  }

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a model on a labelled corpus");
  std::string ev_model, ev_test, ev_report;
  double ev_train_seconds = 0;
  ev->add_option("--model", ev_model, "Model artifact")->required();
  ev->add_option("--test", ev_test, "Test parallel corpus")->required();
  ev->add_option("--report", ev_report, "Metrics TSV output");
  ev->add_option("--train-seconds", ev_train_seconds, "Training time to include in the report");

  // detect
  auto* det = app.add_subcommand("detect", "Label every token of the input sentences");
  std::string det_model, det_in, det_out;
  det->add_option("--model", det_model, "Model artifact")->required();
  det->add_option("--in", det_in, "Plain text (one sentence per line) or corpus TSV")->required();
  det->add_option("--out", det_out, "Per-token TSV output")->required();

  // synth
  auto* syn = app.add_subcommand("synth", "Build a synthetic corpus from a tagged word list");
  std::string syn_lexicon, syn_out;
  std::size_t syn_count = 500;
  std::uint64_t syn_seed = 0;
  syn->add_option("--lexicon", syn_lexicon, "word<TAB>pos list")->required();
  syn->add_option("--sentences", syn_count, "Sentence count")->capture_default_str();
  syn->add_option("--seed", syn_seed, "Random seed")->capture_default_str();
  syn->add_option("--out", syn_out, "Corpus TSV output")->required();

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());

  try {
    try {
      app.parse(argv_rest);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n";
      const auto subs = app.get_subcommands();
      err << (subs.empty() ? app.help() : subs.front()->help());
      return kUsage;
    }

    if (stats->parsed()) {
      out << stats_text(corpus_statistics(load_any_corpus(stats_in)));
    } else if (gen->parsed()) {
      if (!gen_tags.empty()) {
        gen_cfg.enabled_tags.clear();
        std::istringstream list(gen_tags);
        for (std::string name; std::getline(list, name, ',');) {
          const auto tag = tag_from_name(name);
          if (!tag) throw UsageError("unknown error type '" + name + "'");
          gen_cfg.enabled_tags.push_back(*tag);
        }
      }
      as_usage([&] { gen_cfg.validate(); });
      const Resources res = load_resources();
      auto [corpus, report] = generate(load_any_corpus(gen_in), gen_cfg, res);
      write_parallel(gen_out, corpus);
      if (!gen_report.empty()) {
        write_file(gen_report, fs::path(gen_report).extension() == ".json" ? report.to_json()
                                                                            : report.to_key_values());
      }
      if (!gen_labels.empty()) {
        std::vector<LabelClass> labels;
        for (const auto& s : corpus.sentences) {
          for (const auto& t : s.tokens) labels.push_back(t.label);
        }
        write_file(gen_labels, build_registry(labels).to_label_map());
      }
      out << report.to_key_values();
    } else if (split->parsed()) {
      as_usage([&] { split_sizes(ratios.size(), ratios); });
      const auto corpus = load_parallel(split_in);
      const auto parts = split_corpus(corpus, ratios, split_seed);
      std::vector<std::string> names;
      if (parts.size() == 3) {
        names = {"train", "val", "test"};
      } else if (parts.size() == 2) {
        names = {"train", "test"};
      } else {
        for (std::size_t i = 0; i < parts.size(); ++i) names.push_back("part" + std::to_string(i));
      }
      fs::create_directories(split_dir);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const fs::path path = fs::path(split_dir) / (names[i] + ".tsv");
        write_parallel(path, parts[i]);
        out << names[i] << "\t" << parts[i].sentences.size() << " sentences\t"
            << parts[i].token_count() << " tokens\t" << path.string() << "\n";
      }
    } else if (tr->parsed()) {
      std::map<std::string, std::string> merged;
      if (!tr_config.empty()) merged = read_config_file(tr_config);
      for (const auto& [key, opt] : setting_opts) {
        if (opt->count() > 0) merged[key] = given[key];
      }
      for (const auto& [key, value] : merged) {
        auto it = std::find_if(settings.begin(), settings.end(),
                               [&](const Setting& s) { return s.key == key; });
        if (it == settings.end()) throw UsageError("unknown training setting '" + key + "'");
        it->apply(value);
      }
      as_usage([&] { train_cfg.validate(); });

      const auto train_set = load_parallel(tr_train);
      const auto val_set = load_parallel(tr_val);
      ClassRegistry registry;
      if (!tr_labels.empty()) {
        registry = ClassRegistry::from_label_map(read_file(tr_labels));
      } else {
        std::vector<LabelClass> labels;
        for (const auto* c : {&train_set, &val_set}) {
          for (const auto& s : c->sentences) {
            for (const auto& t : s.tokens) labels.push_back(t.label);
          }
        }
        registry = build_registry(labels);
      }
      model_cfg.num_classes = registry.size();
      as_usage([&] { model_cfg.validate(); });
      const auto result = train(train_set, val_set, model_cfg, train_cfg, registry);
      save_model(tr_model, result.model);
      const std::string history = format_history(result.history);
      if (!tr_history.empty()) write_file(tr_history, history);
      out << history;
    } else if (ev->parsed()) {
      const Model model = load_model(ev_model);
      const auto test = load_parallel(ev_test);
      const auto sentences = misspelt_sentences(test);
      const auto start = std::chrono::steady_clock::now();
      const auto predicted = predict_all(model, sentences);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::vector<LabelClass> gold, flat;
      for (std::size_t s = 0; s < test.sentences.size(); ++s) {
        for (std::size_t t = 0; t < test.sentences[s].tokens.size(); ++t) {
          gold.push_back(test.sentences[s].tokens[t].label);
          flat.push_back(predicted[s][t]);
        }
      }
      MetricsReport report = multiclass_metrics(gold, flat);
      if (!gold.empty()) report.timings = timing_report(ev_train_seconds, gold.size(), seconds);
      if (!ev_report.empty()) write_file(ev_report, report.to_tsv());
      out << report.to_text();
    } else if (det->parsed()) {
      const Model model = load_model(det_model);
      const std::string text = read_file(det_in);
      std::vector<std::uint64_t> ids;
      std::vector<std::vector<std::string>> sentences;
      if (starts_with_line(text, kParallelHeader)) {
        const auto corpus = parse_parallel(text);
        sentences = misspelt_sentences(corpus);
        for (const auto& s : corpus.sentences) ids.push_back(s.id);
      } else if (starts_with_line(text, kCorpusHeader)) {
        for (const auto& s : parse_corpus(text).sentences) {
          ids.push_back(s.id);
          auto& words = sentences.emplace_back();
          for (const auto& t : s.tokens) words.push_back(t.word);
        }
      } else {
        std::istringstream lines(text);
        std::string line;
        for (std::uint64_t line_no = 1; std::getline(lines, line); ++line_no) {
          std::istringstream tokens(line);
          std::vector<std::string> words;
          for (std::string w; tokens >> w;) words.push_back(w);
          if (words.empty()) continue;
          ids.push_back(line_no);
          sentences.push_back(std::move(words));
        }
      }
      const auto predicted = predict_all(model, sentences);
      std::string tsv = "sentence_id\trow\tword\tpredicted_type\n";
      for (std::size_t s = 0; s < sentences.size(); ++s) {
        for (std::size_t t = 0; t < sentences[s].size(); ++t) {
          tsv += std::to_string(ids[s]) + "\t" + std::to_string(t + 1) + "\t" + sentences[s][t] +
                 "\t" + predicted[s][t].to_string() + "\n";
        }
      }
      write_file(det_out, tsv);
    } else if (syn->parsed()) {
      const auto lexicon = load_lexicon(syn_lexicon);
      write_corpus(syn_out, synthesize_corpus(lexicon, syn_count, syn_seed));
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace ptypo::cli
