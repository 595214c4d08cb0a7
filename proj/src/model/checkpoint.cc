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

#include <istream>
#include <ostream>

#include <json.hpp>

#include "histner/error.h"
#include "histner/model.h"

namespace histner {

namespace {

constexpr const char *kFormat = "histner-tagger";
constexpr int kVersion = 1;

}  // namespace

void SaveCheckpoint(const TaggerParams &params, std::ostream &out) {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  const TaggerConfig &c = params.config;
  j["config"] = {{"vocab_size", c.vocab_size},         {"embed_dim", c.embed_dim},
                 {"hidden_dim", c.hidden_dim},         {"context_window", c.context_window},
                 {"n_tags", c.n_tags},                 {"n_domains", c.n_domains},
                 {"seed", c.seed}};
  nlohmann::ordered_json arrays = nlohmann::ordered_json::object();
  for (size_t i = 0; i < kNumParams; ++i) {
    const ad::Array &a = params.values[i];
    nlohmann::ordered_json entry;
    entry["block"] = BlockName(ParamBlock(i));
    entry["shape"] = a.shape();
    entry["data"] = std::vector<double>(a.data().begin(), a.data().end());
    arrays[std::string(ParamName(i))] = std::move(entry);
  }
  j["params"] = std::move(arrays);
  out << j.dump() << '\n';
}

TaggerParams LoadCheckpoint(std::istream &in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("checkpoint: ") + e.what(), 0);
  }
  try {
    if (j.at("format") != kFormat) throw ParseError("checkpoint: unknown format", 0);
    if (j.at("version") != kVersion) {
      throw ParseError("checkpoint: unsupported version " + j.at("version").dump(), 0);
    }
    const auto &jc = j.at("config");
    TaggerConfig c;
    c.vocab_size = jc.at("vocab_size").get<size_t>();
    c.embed_dim = jc.at("embed_dim").get<size_t>();
    c.hidden_dim = jc.at("hidden_dim").get<size_t>();
    c.context_window = jc.at("context_window").get<size_t>();
    c.n_tags = jc.at("n_tags").get<size_t>();
    c.n_domains = jc.at("n_domains").get<size_t>();
    c.seed = jc.at("seed").get<uint64_t>();
    c.Validate();
    TaggerParams p;
    p.config = c;
    for (size_t i = 0; i < kNumParams; ++i) {
      const auto &entry = j.at("params").at(std::string(ParamName(i)));
      auto shape = entry.at("shape").get<std::vector<size_t>>();
      const ad::Array expected(ParamShape(c, i));
      if (shape != expected.shape()) {
        throw ValidationError("checkpoint: parameter " + std::string(ParamName(i)) +
                              " has shape " + entry.at("shape").dump() +
                              ", expected " + expected.ShapeString());
      }
      p.values[i] = ad::Array(std::move(shape), entry.at("data").get<std::vector<double>>());
    }
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("checkpoint: ") + e.what(), 0);
  }
}

}  // namespace histner
