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


#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gtest/gtest.h"
#include "test_util.h"

namespace fs = std::filesystem;

namespace histner {
namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult Cli(const std::string &args) {
  const std::string command =
      std::string("HISTNER_LOG=quiet \"") + HISTNER_CLI + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE *pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("histner_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ConvertBratMatchesGolden) {
  const std::string brat = FixturePath("brat");
  ASSERT_EQ(Cli("convert --from brat --input " + brat +
                " --region Transylvania --year 1848 --out " + Path("j")).code, 0);
  EXPECT_EQ(ReadFile(Path("j/corpus.jsonl")), ReadFile(FixturePath("gazeta.jsonl")));
  ASSERT_EQ(Cli("convert --from brat --to conll --input " + brat +
                " --region Transylvania --out " + Path("c")).code, 0);
  EXPECT_EQ(ReadFile(Path("c/corpus.conll")), ReadFile(FixturePath("gazeta.conll")));

  const auto manifest = nlohmann::json::parse(ReadFile(Path("j/manifest.json")));
  EXPECT_EQ(manifest["command"], "convert");
  EXPECT_EQ(manifest["inputs"].size(), 2u);
  EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, JsonlRoundTripThroughConvert) {
  ASSERT_EQ(Cli("convert --input " + FixturePath("gazeta.jsonl") + " --out " + Path("r")).code, 0);
  EXPECT_EQ(ReadFile(Path("r/corpus.jsonl")), ReadFile(FixturePath("gazeta.jsonl")));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("train --no-such-flag").code, 2);
  EXPECT_EQ(Cli("train --input x --mode reverse").code, 2);
  // BRAT input needs a region.
  EXPECT_EQ(Cli("stats --input " + FixturePath("brat")).code, 2);
  EXPECT_EQ(Cli("stats --input " + Path("missing.jsonl")).code, 1);
  std::ofstream(Path("bad.jsonl")) << "{not json\n";
  EXPECT_EQ(Cli("stats --input " + Path("bad.jsonl")).code, 1);
  EXPECT_EQ(Cli("--help").code, 0);
}

TEST_F(CliTest, StatsPrintsTotals) {
  const RunResult r = Cli("stats --input " + FixturePath("gazeta.jsonl") + " --out " + Path("s"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Transylvania"), std::string::npos);
  const auto stats = nlohmann::json::parse(ReadFile(Path("s/stats.json")));
  EXPECT_EQ(stats["sentences"], 2);
  EXPECT_EQ(stats["tokens"], 18);
  EXPECT_EQ(stats["entities"], 4);
  EXPECT_EQ(stats["entity_tokens"], 7);
}

TEST_F(CliTest, ValidateReportsViolations) {
  EXPECT_EQ(Cli("validate --input " + FixturePath("gazeta.jsonl")).code, 0);
  std::ofstream(Path("stray.jsonl"))
      << R"({"doc_id":"d","region":"Moldavia","tokens":["a","b"],"tags":["O","I-DATE"]})" << '\n';
  const RunResult r = Cli("validate --input " + Path("stray.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("1 violation"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  ASSERT_EQ(Cli("synth --kind separable --sentences 40 --seed 2 --out " + Path("d")).code, 0);
  std::ofstream(Path("run.toml")) << "[train]\nepochs = 1\nvocab = 512\nembed = 4\nhidden = 6\nlr = 0.5\n";
  ASSERT_EQ(Cli("--config " + Path("run.toml") + " train --input " + Path("d/corpus.jsonl") +
                " --lr 0.01 --out " + Path("t")).code,
            0);
  const auto manifest = nlohmann::json::parse(ReadFile(Path("t/manifest.json")));
  EXPECT_EQ(manifest["config"]["train"]["epochs"], 1);
  EXPECT_EQ(manifest["config"]["train"]["lr"], 0.01);
  EXPECT_EQ(manifest["config"]["tagger"]["vocab_size"], 512);
  const auto history = nlohmann::json::parse(ReadFile(Path("t/history.json")));
  EXPECT_EQ(history["epochs"].size(), 1u);
  EXPECT_TRUE(fs::exists(Path("t/best.ckpt.json")));
  EXPECT_TRUE(fs::exists(Path("t/eval_test.json")));
}

TEST_F(CliTest, SplitWritesSubsetsAndReusesSplitFile) {
  ASSERT_EQ(Cli("synth --kind separable --sentences 50 --seed 3 --out " + Path("d")).code, 0);
  const std::string corpus = Path("d/corpus.jsonl");
  const RunResult r = Cli("split --input " + corpus + " --seed 4 --out " + Path("s"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("train"), std::string::npos);
  const auto split = nlohmann::json::parse(ReadFile(Path("s/split.json")));
  EXPECT_EQ(split["train"].size(), 40u);
  EXPECT_EQ(split["valid"].size(), 5u);
  EXPECT_EQ(split["test"].size(), 5u);
  // A different seed with the split file must give the same subsets.
  ASSERT_EQ(Cli("split --input " + corpus + " --seed 99 --split-file " + Path("s/split.json") +
                " --out " + Path("s2")).code,
            0);
  EXPECT_EQ(ReadFile(Path("s/test.jsonl")), ReadFile(Path("s2/test.jsonl")));
}

TEST_F(CliTest, TfIdfTsv) {
  const RunResult r = Cli("tfidf --k 1 --input " + FixturePath("tfidf_two_region.jsonl"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Bessarabia\t1\tabc\t0.960906\nWallachia\t1\tziar\t0.480453\n");
}

}  // namespace
}  // namespace histner
