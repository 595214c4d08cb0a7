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
#include <unordered_map>

#include <json.hpp>

#include "histner/corpus.h"
#include "histner/error.h"

namespace histner {

namespace {

using nlohmann::ordered_json;

ordered_json SentenceJson(const Sentence &s, std::optional<int> year) {
  ordered_json j;
  j["doc_id"] = s.doc_id;
  j["region"] = RegionName(s.region);
  j["tokens"] = s.TokenTexts();
  j["tags"] = TagStrings(s.tags);
  if (year) j["year"] = *year;
  return j;
}

}  // namespace

void SaveJsonl(const Corpus &corpus, std::ostream &out) {
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      out << SentenceJson(s, doc.year).dump() << '\n';
    }
  }
}

void SaveJsonl(std::span<const Sentence> sentences, std::ostream &out,
               const std::map<std::string, int> *years) {
  for (const Sentence &s : sentences) {
    std::optional<int> year;
    if (years) {
      const auto it = years->find(s.doc_id);
      if (it != years->end()) year = it->second;
    }
    out << SentenceJson(s, year).dump() << '\n';
  }
}

Corpus LoadJsonl(std::istream &in) {
  Corpus corpus;
  std::unordered_map<std::string, size_t> doc_index;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    try {
      if (!j.is_object()) throw ParseError("expected a JSON object", line_no);
      for (const char *key : {"doc_id", "region", "tokens", "tags"}) {
        if (!j.contains(key)) {
          throw ParseError(std::string("missing key '") + key + "'", line_no);
        }
      }
      const auto doc_id = j["doc_id"].get<std::string>();
      const auto region_name = j["region"].get<std::string>();
      const auto region = ParseRegion(region_name);
      if (!region) throw ParseError("unknown region '" + region_name + "'", line_no);
      auto tokens = j["tokens"].get<std::vector<std::string>>();
      const auto tag_strings = j["tags"].get<std::vector<std::string>>();
      std::optional<int> year;
      if (j.contains("year") && !j["year"].is_null()) year = j["year"].get<int>();

      TagSequence tags;
      try {
        tags = ParseTags(tag_strings);
      } catch (const ParseError &e) {
        throw ParseError(e.what(), line_no);
      }
      auto [it, inserted] = doc_index.emplace(doc_id, corpus.size());
      if (inserted) {
        Document doc;
        doc.id = doc_id;
        doc.region = *region;
        doc.year = year;
        corpus.push_back(std::move(doc));
      }
      Document &doc = corpus[it->second];
      if (doc.region != *region) {
        throw ParseError("document " + doc_id + " changes region", line_no);
      }
      if (doc.year != year) {
        throw ParseError("document " + doc_id + " changes year", line_no);
      }
      try {
        doc.sentences.push_back(MakeSentence(doc_id, doc.sentences.size(), *region,
                                             std::move(tokens), std::move(tags)));
      } catch (const ValidationError &e) {
        throw ParseError(e.what(), line_no);
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("bad field type: ") + e.what(), line_no);
    }
  }
  return corpus;
}

void ExportConll(std::span<const Sentence> sentences, std::ostream &out) {
  for (const Sentence &s : sentences) {
    for (size_t t = 0; t < s.tokens.size(); ++t) {
      out << s.tokens[t].text << '\t' << s.tags[t].ToString() << '\n';
    }
    out << '\n';
  }
}

void ExportConll(const Corpus &corpus, std::ostream &out) {
  for (const Document &doc : corpus) ExportConll(doc.sentences, out);
}

}  // namespace histner
