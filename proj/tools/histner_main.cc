// Copyright 2026 The histner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end for the histner library.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "histner/analysis.h"
#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/metrics.h"
#include "histner/model.h"
#include "histner/synthetic.h"
#include "histner/training.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace histner {
namespace {

// Bad flag combinations detected after parsing; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { kQuiet, kInfo, kDebug };

LogLevel Verbosity() {
  const char *env = std::getenv("HISTNER_LOG");
  if (env == nullptr) return LogLevel::kInfo;
  const std::string v = env;
  if (v == "quiet" || v == "0") return LogLevel::kQuiet;
  if (v == "debug" || v == "2") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void Log(LogLevel level, const std::string &msg) {
  if (Verbosity() >= level) std::cerr << msg << '\n';
}

struct Options {
  std::string input;
  std::string other;
  std::string format = "auto";
  std::string out;
  std::string split_file;
  std::string checkpoint;
  std::string region;
  int year = 0;
  std::string to = "jsonl";
  std::string subset;
  std::vector<std::string> tag_names;

  // split
  double train_ratio = 0.8;
  double valid_ratio = 0.1;
  double test_ratio = 0.1;

  // tfidf
  int k = 5;
  bool raw_tf = false;

  // model and training
  std::string mode = "baseline";
  double lambda = 0.1;
  int epochs = 15;
  double lr = 1e-3;
  double weight_decay = 0.01;
  int batch = 32;
  double clip = 2.0;
  uint64_t seed = 0;
  int jobs = 1;
  size_t vocab = size_t{1} << 15;
  size_t embed = 64;
  size_t hidden = 128;
  size_t window = 2;

  // synth
  std::string kind = "separable";
  size_t sentences = 200;
};

// ---- I/O helpers ----

std::string ReadWhole(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Sha256(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::ofstream OpenOut(const fs::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void WriteJson(const fs::path &path, const ordered_json &j) {
  std::ofstream out = OpenOut(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

fs::path OutDir(const Options &o, bool required = true) {
  if (o.out.empty()) {
    if (required) throw UsageError("--out is required for this command");
    return {};
  }
  fs::create_directories(o.out);
  return o.out;
}

// ---- manifest ----

class Manifest {
 public:
  Manifest(std::string command, const Options &o) : command_(std::move(command)), opts_(o) {}

  void AddInput(const fs::path &path) {
    if (path.empty()) return;
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto &e : fs::recursive_directory_iterator(path)) {
        if (e.is_regular_file()) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto &f : files) AddInput(f);
      return;
    }
    inputs_.push_back({{"path", path.string()}, {"sha256", Sha256(ReadWhole(path))}});
  }

  void AddOutput(const std::string &name) { outputs_.push_back(name); }
  void SetConfig(ordered_json config) { config_ = std::move(config); }

  void Write(const fs::path &dir) const {
    if (dir.empty()) return;
    ordered_json j;
    j["command"] = command_;
    j["config"] = config_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["version"] = HISTNER_VERSION;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = stamp;
    j["seed"] = opts_.seed;
    WriteJson(dir / "manifest.json", j);
  }

 private:
  std::string command_;
  const Options &opts_;
  ordered_json config_ = ordered_json::object();
  std::vector<ordered_json> inputs_;
  std::vector<std::string> outputs_;
};

// ---- input loading ----

struct Loaded {
  Corpus corpus;
  std::optional<SplitAssignment> split;
};

std::optional<Region> RegionFlag(const Options &o) {
  if (o.region.empty()) return std::nullopt;
  const auto r = ParseRegion(o.region);
  if (!r) throw UsageError("unknown region '" + o.region + "'");
  return r;
}

Corpus LoadBratDir(const fs::path &dir, const Options &o) {
  const auto region = RegionFlag(o);
  if (!region) throw UsageError("--region is required for BRAT input");
  std::vector<fs::path> texts;
  for (const auto &e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") texts.push_back(e.path());
  }
  std::sort(texts.begin(), texts.end());
  Corpus corpus;
  for (const fs::path &txt : texts) {
    fs::path ann = txt;
    ann.replace_extension(".ann");
    if (!fs::exists(ann)) {
      Log(LogLevel::kInfo, "warning: " + txt.string() + " has no .ann file; skipped");
      continue;
    }
    std::vector<std::string> warnings;
    try {
      corpus.push_back(BratToDocument(txt.stem().string(), *region,
                                      o.year ? std::optional(o.year) : std::nullopt,
                                      ReadWhole(txt), ReadWhole(ann), &warnings));
    } catch (const ParseError &e) {
      throw ParseError(ann.string() + ": " + e.what(), e.line());
    } catch (const Error &e) {
      throw Error(ann.string() + ": " + e.what());
    }
    for (const auto &w : warnings) Log(LogLevel::kInfo, "warning: " + ann.string() + ": " + w);
  }
  return corpus;
}

Corpus LoadJsonlFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return LoadJsonl(in);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

Loaded LoadInput(const std::string &input, const Options &o) {
  if (input.empty()) throw UsageError("--input is required");
  const fs::path path(input);
  if (!fs::exists(path)) throw Error("input not found: " + input);
  std::string format = o.format;
  if (format == "auto") {
    if (fs::is_directory(path)) {
      format = "histnero";
      for (const auto &e : fs::directory_iterator(path)) {
        if (e.path().extension() == ".ann") format = "brat";
      }
    } else {
      format = "jsonl";
    }
  }
  Loaded out;
  if (format == "jsonl") {
    out.corpus = LoadJsonlFile(path);
  } else if (format == "brat") {
    out.corpus = LoadBratDir(path, o);
  } else if (format == "histnero") {
    IngestedDataset data = LoadHistNero(path.string(), o.tag_names);
    out.corpus = std::move(data.corpus);
    if (!data.split.empty()) out.split = std::move(data.split);
  } else {
    throw UsageError("unknown format '" + format + "'");
  }
  return out;
}

DatasetSplit ChooseSplit(const Loaded &data, const Options &o) {
  if (!o.split_file.empty()) {
    std::ifstream in(o.split_file, std::ios::binary);
    if (!in) throw Error("cannot open " + o.split_file);
    return ApplySplit(data.corpus, ReadSplitFile(in));
  }
  if (data.split) return ApplySplit(data.corpus, *data.split);
  return SplitDataset(data.corpus, {o.train_ratio, o.valid_ratio, o.test_ratio, o.seed});
}

std::vector<Sentence> ChooseSubset(const DatasetSplit &split, const Corpus &corpus,
                                   const std::string &name) {
  if (name == "train") return split.train;
  if (name == "valid") return split.valid;
  if (name == "test") return split.test;
  if (name == "all") return Flatten(corpus);
  throw UsageError("unknown subset '" + name + "'");
}

TaggerConfig TaggerFrom(const Options &o) {
  TaggerConfig t;
  t.vocab_size = o.vocab;
  t.embed_dim = o.embed;
  t.hidden_dim = o.hidden;
  t.context_window = o.window;
  t.seed = o.seed;
  t.Validate();
  return t;
}

TrainConfig TrainFrom(const Options &o) {
  TrainConfig c;
  const auto mode = ParseMode(o.mode);
  if (!mode) throw UsageError("unknown mode '" + o.mode + "'");
  c.mode = *mode;
  c.epochs = o.epochs;
  c.lr = o.lr;
  c.weight_decay = o.weight_decay;
  c.batch_size = o.batch;
  c.clip_norm = o.clip;
  c.lambda = o.lambda;
  c.seed = o.seed;
  c.Validate();
  return c;
}

ordered_json TaggerJson(const TaggerConfig &t) {
  return {{"vocab_size", t.vocab_size}, {"embed_dim", t.embed_dim},
          {"hidden_dim", t.hidden_dim}, {"context_window", t.context_window},
          {"seed", t.seed}};
}

ordered_json SplitJson(const Options &o) {
  ordered_json j;
  if (!o.split_file.empty()) {
    j["split_file"] = o.split_file;
  } else {
    j["ratios"] = {o.train_ratio, o.valid_ratio, o.test_ratio};
  }
  return j;
}

TaggerParams LoadParams(const Options &o) {
  if (o.checkpoint.empty()) throw UsageError("--checkpoint is required");
  std::ifstream in(o.checkpoint, std::ios::binary);
  if (!in) throw Error("cannot open " + o.checkpoint);
  return LoadCheckpoint(in);
}

// ---- commands ----

void CmdStats(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const CorpusStatistics stats = ComputeStatistics(data.corpus);
  PrintStatistics(stats, std::cout);
  const fs::path dir = OutDir(o, false);
  if (dir.empty()) return;
  ordered_json j;
  j["sentences"] = stats.sentences;
  j["tokens"] = stats.tokens;
  j["entities"] = stats.Total().entities;
  j["entity_tokens"] = stats.Total().tokens;
  j["tokens_per_entity"] = stats.Total().TokensPerEntity();
  for (Region r : kAllRegions) {
    ordered_json row;
    row["sentences"] = stats.region_sentences[Index(r)];
    row["tokens"] = stats.region_tokens[Index(r)];
    for (EntityLabel l : kAllLabels) {
      const EntityCounts &c = stats.cells[Index(l)][Index(r)];
      row["labels"][LabelName(l)] = {{"entities", c.entities}, {"tokens", c.tokens}};
    }
    j["per_region"][RegionName(r)] = row;
  }
  WriteJson(dir / "stats.json", j);
  Manifest m("stats", o);
  m.AddInput(o.input);
  m.AddOutput("stats.json");
  m.Write(dir);
}

int CmdValidate(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const auto violations = Validate(data.corpus);
  for (const Violation &v : violations) {
    std::cout << v.doc_id << ":" << v.sentence << ": " << v.message << '\n';
  }
  std::cout << violations.size() << " violation(s) in " << data.corpus.size()
            << " document(s)\n";
  if (const fs::path dir = OutDir(o, false); !dir.empty()) {
    ordered_json j = ordered_json::array();
    for (const Violation &v : violations) {
      j.push_back({{"doc_id", v.doc_id}, {"sentence", v.sentence}, {"message", v.message}});
    }
    WriteJson(dir / "violations.json", j);
    Manifest m("validate", o);
    m.AddInput(o.input);
    m.AddOutput("violations.json");
    m.Write(dir);
  }
  return violations.empty() ? 0 : 1;
}

void CmdConvert(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const fs::path dir = OutDir(o);
  Manifest m("convert", o);
  m.AddInput(o.input);
  if (o.to == "jsonl") {
    std::ofstream out = OpenOut(dir / "corpus.jsonl");
    SaveJsonl(data.corpus, out);
    m.AddOutput("corpus.jsonl");
  } else if (o.to == "conll") {
    std::ofstream out = OpenOut(dir / "corpus.conll");
    ExportConll(data.corpus, out);
    m.AddOutput("corpus.conll");
  } else {
    throw UsageError("unknown target format '" + o.to + "'");
  }
  if (data.split) {
    std::ofstream out = OpenOut(dir / "split.json");
    WriteSplitFile(*data.split, out);
    m.AddOutput("split.json");
  }
  m.SetConfig({{"format", o.format}, {"to", o.to}});
  m.Write(dir);
}

void CmdSplit(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const DatasetSplit split = ChooseSplit(data, o);
  const fs::path dir = OutDir(o);
  {
    std::ofstream out = OpenOut(dir / "split.json");
    WriteSplitFile(AssignmentOf(split), out);
  }
  std::map<std::string, int> years;
  for (const Document &d : data.corpus) {
    if (d.year) years[d.id] = *d.year;
  }
  std::printf("%-8s", "");
  for (Region r : kAllRegions) std::printf("%8s", std::string(RegionShortName(r)).c_str());
  std::printf("%8s\n", "Total");
  for (const auto &[name, subset] : {std::pair{"train", &split.train},
                                     std::pair{"valid", &split.valid},
                                     std::pair{"test", &split.test}}) {
    std::ofstream out = OpenOut(dir / (std::string(name) + ".jsonl"));
    SaveJsonl(*subset, out, &years);
    std::array<int, kNumRegions> counts{};
    for (const Sentence &s : *subset) ++counts[Index(s.region)];
    std::printf("%-8s", name);
    for (int c : counts) std::printf("%8d", c);
    std::printf("%8zu\n", subset->size());
  }
  Manifest m("split", o);
  m.AddInput(o.input);
  m.AddInput(o.split_file);
  ordered_json config = SplitJson(o);
  config["seed"] = o.seed;
  m.SetConfig(config);
  for (const char *f : {"split.json", "train.jsonl", "valid.jsonl", "test.jsonl"}) m.AddOutput(f);
  m.Write(dir);
}

void CmdIaa(const Options &o) {
  if (o.other.empty()) throw UsageError("--other is required (second annotation layer)");
  const Loaded a = LoadInput(o.input, o);
  const Loaded b = LoadInput(o.other, o);
  const AgreementReport report = IaaReport(a.corpus, b.corpus);
  PrintAgreement(report, std::cout);
  if (const fs::path dir = OutDir(o, false); !dir.empty()) {
    WriteJson(dir / "iaa.json", ToJson(report));
    Manifest m("iaa", o);
    m.AddInput(o.input);
    m.AddInput(o.other);
    m.AddOutput("iaa.json");
    m.Write(dir);
  }
}

void CmdTfIdf(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  TfIdfOptions options;
  options.log_tf = !o.raw_tf;
  const TfIdfResult result = TfIdfTopK(data.corpus, o.k, options);
  for (const auto &w : result.warnings) Log(LogLevel::kInfo, "warning: " + w);
  WriteTfIdfTsv(result, std::cout);
  if (const fs::path dir = OutDir(o, false); !dir.empty()) {
    std::ofstream out = OpenOut(dir / "tfidf.tsv");
    WriteTfIdfTsv(result, out);
    Manifest m("tfidf", o);
    m.AddInput(o.input);
    m.SetConfig({{"k", o.k}, {"log_tf", options.log_tf}});
    m.AddOutput("tfidf.tsv");
    m.Write(dir);
  }
}

void CmdTrain(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const DatasetSplit split = ChooseSplit(data, o);
  const TaggerConfig tagger = TaggerFrom(o);
  const TrainConfig config = TrainFrom(o);
  const fs::path dir = OutDir(o);
  Log(LogLevel::kInfo, "training " + std::string(ModeName(config.mode)) + " on " +
                           std::to_string(split.train.size()) + " sentences");
  const TrainResult result = Train(split.train, split.valid, tagger, config);
  if (Verbosity() >= LogLevel::kDebug) {
    for (const EpochRecord &e : result.history) {
      char line[160];
      std::snprintf(line, sizeof line, "epoch %2d  L_y %.4f  L_d %.4f  valid F1 %.4f",
                    e.epoch, e.ner_loss, e.domain_loss, e.valid_f1);
      Log(LogLevel::kDebug, line);
    }
  }
  WriteJson(dir / "history.json", HistoryJson(result));
  {
    std::ofstream out = OpenOut(dir / "best.ckpt.json");
    SaveCheckpoint(result.best, out);
  }
  {
    std::ofstream out = OpenOut(dir / "final.ckpt.json");
    SaveCheckpoint(result.final, out);
  }
  {
    std::ofstream out = OpenOut(dir / "split.json");
    WriteSplitFile(AssignmentOf(split), out);
  }
  Manifest m("train", o);
  m.AddInput(o.input);
  m.AddInput(o.split_file);
  m.AddOutput("history.json");
  m.AddOutput("best.ckpt.json");
  m.AddOutput("final.ckpt.json");
  m.AddOutput("split.json");
  if (!split.test.empty()) {
    const EvalReport report = Evaluate(result.best, split.test);
    std::cout << "best epoch " << result.best_epoch << ", test subset\n";
    PrintEvalReport(report, std::cout);
    WriteJson(dir / "eval_test.json", ToJson(report));
    m.AddOutput("eval_test.json");
  }
  ordered_json config_json = {{"train", ToJson(config)},
                              {"tagger", TaggerJson(tagger)},
                              {"split", SplitJson(o)}};
  m.SetConfig(config_json);
  m.Write(dir);
}

void CmdEval(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const TaggerParams params = LoadParams(o);
  const std::string subset_name = o.subset.empty() ? "test" : o.subset;
  const std::vector<Sentence> subset =
      subset_name == "all" ? Flatten(data.corpus)
                           : ChooseSubset(ChooseSplit(data, o), data.corpus, subset_name);
  const EvalReport report = Evaluate(params, subset);
  PrintEvalReport(report, std::cout);
  if (const fs::path dir = OutDir(o, false); !dir.empty()) {
    WriteJson(dir / "eval.json", ToJson(report));
    Manifest m("eval", o);
    m.AddInput(o.input);
    m.AddInput(o.checkpoint);
    m.AddInput(o.split_file);
    m.SetConfig({{"subset", subset_name}, {"split", SplitJson(o)}});
    m.AddOutput("eval.json");
    m.Write(dir);
  }
}

void CmdCrossRegion(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const DatasetSplit split = ChooseSplit(data, o);
  const TaggerConfig tagger = TaggerFrom(o);
  const TrainConfig config = TrainFrom(o);
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  const CrossRegionResult result = CrossRegion(split, tagger, config, o.jobs);
  PrintCrossRegion(result, std::cout);
  if (const fs::path dir = OutDir(o, false); !dir.empty()) {
    WriteJson(dir / "crossregion.json", ToJson(result));
    Manifest m("crossregion", o);
    m.AddInput(o.input);
    m.AddInput(o.split_file);
    m.SetConfig({{"train", ToJson(config)},
                 {"tagger", TaggerJson(tagger)},
                 {"split", SplitJson(o)},
                 {"jobs", o.jobs}});
    m.AddOutput("crossregion.json");
    m.Write(dir);
  }
}

void CmdExportEmbeddings(const Options &o) {
  const Loaded data = LoadInput(o.input, o);
  const TaggerParams params = LoadParams(o);
  const std::string subset_name = o.subset.empty() ? "all" : o.subset;
  const std::vector<Sentence> subset =
      subset_name == "all" ? Flatten(data.corpus)
                           : ChooseSubset(ChooseSplit(data, o), data.corpus, subset_name);
  const fs::path dir = OutDir(o);
  {
    std::ofstream out = OpenOut(dir / "embeddings.tsv");
    ExportEmbeddings(params, subset, out);
    if (!out) throw Error("write failed: embeddings.tsv");
  }
  Manifest m("export-embeddings", o);
  m.AddInput(o.input);
  m.AddInput(o.checkpoint);
  m.SetConfig({{"subset", subset_name}});
  m.AddOutput("embeddings.tsv");
  m.Write(dir);
  std::cout << subset.size() << " rows written to " << (dir / "embeddings.tsv").string()
            << '\n';
}

void CmdSynth(const Options &o) {
  Corpus corpus;
  if (o.kind == "separable") {
    corpus = synthetic::Separable(o.sentences, o.seed);
  } else if (o.kind == "two-domain") {
    synthetic::TwoDomainOptions options;
    options.seed = o.seed;
    corpus = synthetic::TwoDomain(options);
  } else if (o.kind == "shared") {
    corpus = synthetic::SharedGenerator(o.sentences, o.seed);
  } else {
    throw UsageError("unknown synthetic corpus '" + o.kind + "'");
  }
  const fs::path dir = OutDir(o);
  {
    std::ofstream out = OpenOut(dir / "corpus.jsonl");
    SaveJsonl(corpus, out);
  }
  Manifest m("synth", o);
  m.SetConfig({{"kind", o.kind}, {"sentences", o.sentences}});
  m.AddOutput("corpus.jsonl");
  m.Write(dir);
}

// ---- flag wiring ----

void InputFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--input", o.input, "Corpus: .jsonl file, BRAT directory or HistNERo release");
  cmd->add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "brat", "histnero"}));
  cmd->add_option("--region", o.region, "Region of BRAT documents");
  cmd->add_option("--year", o.year, "Publication year of BRAT documents");
  cmd->add_option("--tag-names", o.tag_names, "Tag names by id for integer-coded releases");
}

void OutFlag(CLI::App *cmd, Options &o) {
  cmd->add_option("--out", o.out, "Output directory");
}

void SplitFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--split-file", o.split_file, "Precomputed split (overrides ratios)");
  cmd->add_option("--train-ratio", o.train_ratio);
  cmd->add_option("--valid-ratio", o.valid_ratio);
  cmd->add_option("--test-ratio", o.test_ratio);
  cmd->add_option("--seed", o.seed, "Random seed");
}

void ModelFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"baseline", "grad_rev", "loss_rev"}));
  cmd->add_option("--lambda", o.lambda);
  cmd->add_option("--epochs", o.epochs);
  cmd->add_option("--lr", o.lr);
  cmd->add_option("--weight-decay", o.weight_decay);
  cmd->add_option("--batch", o.batch);
  cmd->add_option("--clip", o.clip);
  cmd->add_option("--vocab", o.vocab);
  cmd->add_option("--embed", o.embed);
  cmd->add_option("--hidden", o.hidden);
  cmd->add_option("--window", o.window);
}

int Run(int argc, char **argv) {
  Options o;
  CLI::App app{"Historical NER toolkit"};
  app.set_version_flag("--version", HISTNER_VERSION);
  // Keys go in a section named after the subcommand, e.g. [train].
  app.set_config("--config", "", "TOML/INI file with flag values; flags override it");
  app.require_subcommand(1, 1);

  CLI::App *stats = app.add_subcommand("stats", "Corpus statistics");
  InputFlags(stats, o);
  OutFlag(stats, o);

  CLI::App *validate = app.add_subcommand("validate", "Check annotation invariants");
  InputFlags(validate, o);
  OutFlag(validate, o);

  CLI::App *convert = app.add_subcommand("convert", "Convert between corpus formats");
  InputFlags(convert, o);
  OutFlag(convert, o);
  convert->add_option("--from", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "brat", "histnero"}));
  convert->add_option("--to", o.to, "Output format")->check(CLI::IsMember({"jsonl", "conll"}));

  CLI::App *split = app.add_subcommand("split", "Stratified train/valid/test split");
  InputFlags(split, o);
  OutFlag(split, o);
  SplitFlags(split, o);

  CLI::App *iaa = app.add_subcommand("iaa", "Inter-annotator agreement");
  InputFlags(iaa, o);
  OutFlag(iaa, o);
  iaa->add_option("--other", o.other, "Second annotation layer");

  CLI::App *tfidf = app.add_subcommand("tfidf", "Per-region TF-IDF ranking");
  InputFlags(tfidf, o);
  OutFlag(tfidf, o);
  tfidf->add_option("--k", o.k, "Terms per region");
  tfidf->add_flag("--raw-tf", o.raw_tf, "Use raw counts instead of log(1 + count)");

  CLI::App *train = app.add_subcommand("train", "Train a tagger");
  InputFlags(train, o);
  OutFlag(train, o);
  SplitFlags(train, o);
  ModelFlags(train, o);

  CLI::App *eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  InputFlags(eval, o);
  OutFlag(eval, o);
  SplitFlags(eval, o);
  eval->add_option("--checkpoint", o.checkpoint);
  eval->add_option("--subset", o.subset)->check(CLI::IsMember({"train", "valid", "test", "all"}));

  CLI::App *cross = app.add_subcommand("crossregion", "Train per region, evaluate on all");
  InputFlags(cross, o);
  OutFlag(cross, o);
  SplitFlags(cross, o);
  ModelFlags(cross, o);
  cross->add_option("--jobs", o.jobs, "Parallel training runs");

  CLI::App *embed = app.add_subcommand("export-embeddings", "Mean feature vector per sentence");
  InputFlags(embed, o);
  OutFlag(embed, o);
  SplitFlags(embed, o);
  embed->add_option("--checkpoint", o.checkpoint);
  embed->add_option("--subset", o.subset)->check(CLI::IsMember({"train", "valid", "test", "all"}));

  CLI::App *synth = app.add_subcommand("synth", "Write a synthetic corpus");
  OutFlag(synth, o);
  synth->add_option("--kind", o.kind)->check(CLI::IsMember({"separable", "two-domain", "shared"}));
  synth->add_option("--sentences", o.sentences, "Sentences (per region for 'shared')");
  synth->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (stats->parsed()) CmdStats(o);
    if (validate->parsed()) return CmdValidate(o);
    if (convert->parsed()) CmdConvert(o);
    if (split->parsed()) CmdSplit(o);
    if (iaa->parsed()) CmdIaa(o);
    if (tfidf->parsed()) CmdTfIdf(o);
    if (train->parsed()) CmdTrain(o);
    if (eval->parsed()) CmdEval(o);
    if (cross->parsed()) CmdCrossRegion(o);
    if (embed->parsed()) CmdExportEmbeddings(o);
    if (synth->parsed()) CmdSynth(o);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace histner

int main(int argc, char **argv) { return histner::Run(argc, argv); }
