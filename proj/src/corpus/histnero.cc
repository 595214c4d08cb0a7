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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<Subset> SubsetOfFile(const fs::path &p) {
  const std::string name = utf8::ToLower(p.filename().string());
  if (name.find("train") != std::string::npos) return Subset::kTrain;
  if (name.find("valid") != std::string::npos ||
      name.find("dev") != std::string::npos) {
    return Subset::kValid;
  }
  if (name.find("test") != std::string::npos) return Subset::kTest;
  return std::nullopt;
}

// Release files spell labels in several ways (B-PERS, B-ORGANIZATION, ...).
Tag LenientTag(const std::string &s) {
  if (s == "O") return Tag::Outside();
  if (s.size() > 2 && s[1] == '-' && (s[0] == 'B' || s[0] == 'I')) {
    if (const auto l = ParseLabel(s.substr(2))) {
      return s[0] == 'B' ? Tag::Begin(*l) : Tag::Inside(*l);
    }
  }
  throw ParseError("unknown tag '" + s + "'", 0);
}

std::vector<json> ReadRecords(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  const size_t first = content.find_first_not_of(" \t\r\n");
  std::vector<json> records;
  if (first == std::string::npos) return records;
  if (content[first] == '[') {
    json arr;
    try {
      arr = json::parse(content);
    } catch (const json::exception &e) {
      throw ParseError(path.string() + ": " + e.what(), 0);
    }
    for (auto &r : arr) records.push_back(std::move(r));
    return records;
  }
  std::istringstream lines(content);
  std::string line;
  size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception &e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
  }
  return records;
}

}  // namespace

IngestedDataset LoadHistNero(const std::string &dir,
                             const std::vector<std::string> &tag_names) {
  std::vector<Tag> id_to_tag;
  if (tag_names.empty()) {
    for (int c = 0; c < Tag::kCount; ++c) id_to_tag.push_back(Tag::FromCode(c));
  } else {
    for (const auto &name : tag_names) id_to_tag.push_back(LenientTag(name));
  }

  std::array<std::vector<fs::path>, 3> files;
  if (!fs::is_directory(dir)) throw Error(dir + " is not a directory");
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext != ".json" && ext != ".jsonl") continue;
    if (const auto subset = SubsetOfFile(entry.path())) {
      files[static_cast<int>(*subset)].push_back(entry.path());
    }
  }
  for (auto &f : files) std::sort(f.begin(), f.end());

  IngestedDataset out;
  std::unordered_map<std::string, size_t> doc_index;
  for (int subset = 0; subset < 3; ++subset) {
    for (const fs::path &path : files[subset]) {
      const std::vector<json> records = ReadRecords(path);
      for (size_t k = 0; k < records.size(); ++k) {
        const json &rec = records[k];
        const std::string where = path.filename().string() + " record " +
                                  std::to_string(k + 1);
        try {
          const json &tag_field = rec.contains("ner_tags") ? rec.at("ner_tags")
                                                           : rec.at("tags");
          TagSequence tags;
          for (const auto &t : tag_field) {
            if (t.is_number_integer()) {
              const int id = t.get<int>();
              if (id < 0 || id >= static_cast<int>(id_to_tag.size())) {
                throw ParseError(where + ": tag id " + std::to_string(id) +
                                     " out of range",
                                 0);
              }
              tags.push_back(id_to_tag[id]);
            } else {
              tags.push_back(LenientTag(t.get<std::string>()));
            }
          }
          const auto region_name = rec.at("region").get<std::string>();
          const auto region = ParseRegion(region_name);
          if (!region) throw ParseError(where + ": unknown region " + region_name, 0);
          std::string doc_id;
          if (rec.contains("doc_id")) {
            const json &d = rec.at("doc_id");
            doc_id = d.is_string() ? d.get<std::string>() : d.dump();
          } else {
            const json &d = rec.at("id");
            doc_id = d.is_string() ? d.get<std::string>() : d.dump();
          }
          std::optional<int> year;
          if (rec.contains("year") && rec.at("year").is_number_integer()) {
            year = rec.at("year").get<int>();
          }
          auto [it, inserted] = doc_index.emplace(doc_id, out.corpus.size());
          if (inserted) {
            Document doc;
            doc.id = doc_id;
            doc.region = *region;
            doc.year = year;
            out.corpus.push_back(std::move(doc));
          }
          Document &doc = out.corpus[it->second];
          Sentence s = MakeSentence(doc_id, doc.sentences.size(), *region,
                                    rec.at("tokens").get<std::vector<std::string>>(),
                                    std::move(tags));
          out.split[s.Key()] = static_cast<Subset>(subset);
          doc.sentences.push_back(std::move(s));
        } catch (const json::exception &e) {
          throw ParseError(where + ": " + e.what(), 0);
        } catch (const ValidationError &e) {
          throw ParseError(where + ": " + e.what(), 0);
        }
      }
    }
  }
  return out;
}

}  // namespace histner
