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
#include <cctype>

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

namespace {

constexpr std::array<std::string_view, kNumRegions> kRegionNames = {
    "Bessarabia", "Moldavia", "Transylvania", "Wallachia"};
constexpr std::array<std::string_view, kNumRegions> kRegionShort = {
    "Bess.", "Mold.", "Trans.", "Wall."};
constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "PERSON", "ORGANISATION", "LOCATION", "PRODUCT", "DATE"};

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view RegionName(Region r) { return kRegionNames[Index(r)]; }
std::string_view RegionShortName(Region r) { return kRegionShort[Index(r)]; }
std::string_view LabelName(EntityLabel l) { return kLabelNames[Index(l)]; }

std::optional<Region> ParseRegion(std::string_view s) {
  const std::string key = utf8::ToLower(s);
  static const std::pair<std::string_view, Region> kAliases[] = {
      {"bessarabia", Region::kBessarabia},
      {"basarabia", Region::kBessarabia},
      {"bess.", Region::kBessarabia},
      {"moldavia", Region::kMoldavia},
      {"moldova", Region::kMoldavia},
      {"mold.", Region::kMoldavia},
      {"transylvania", Region::kTransylvania},
      {"transilvania", Region::kTransylvania},
      {"trans.", Region::kTransylvania},
      {"wallachia", Region::kWallachia},
      {"muntenia", Region::kWallachia},
      {"țara românească", Region::kWallachia},
      {"wall.", Region::kWallachia},
  };
  for (const auto &[name, region] : kAliases) {
    if (key == name) return region;
  }
  return std::nullopt;
}

std::optional<EntityLabel> ParseLabel(std::string_view s) {
  const std::string key = Upper(s);
  static const std::pair<std::string_view, EntityLabel> kAliases[] = {
      {"PERSON", EntityLabel::kPerson},
      {"PERS", EntityLabel::kPerson},
      {"PER", EntityLabel::kPerson},
      {"ORGANISATION", EntityLabel::kOrganisation},
      {"ORGANIZATION", EntityLabel::kOrganisation},
      {"ORG", EntityLabel::kOrganisation},
      {"LOCATION", EntityLabel::kLocation},
      {"LOC", EntityLabel::kLocation},
      {"PRODUCT", EntityLabel::kProduct},
      {"PROD", EntityLabel::kProduct},
      {"DATE", EntityLabel::kDate},
  };
  for (const auto &[name, label] : kAliases) {
    if (key == name) return label;
  }
  return std::nullopt;
}

Tag Tag::FromCode(int code) {
  if (code < 0 || code >= kCount) {
    throw ParseError("tag code out of range: " + std::to_string(code), 0);
  }
  return Tag(code);
}

Tag Tag::Parse(std::string_view s) {
  if (s == "O") return Outside();
  if (s.size() > 2 && s[1] == '-' && (s[0] == 'B' || s[0] == 'I')) {
    // Only canonical label spellings are part of the tag alphabet.
    const std::string_view name = s.substr(2);
    for (EntityLabel l : kAllLabels) {
      if (LabelName(l) == name) return s[0] == 'B' ? Begin(l) : Inside(l);
    }
  }
  throw ParseError("unknown tag '" + std::string(s) + "'", 0);
}

std::string Tag::ToString() const {
  if (is_outside()) return "O";
  return std::string(is_begin() ? "B-" : "I-") + std::string(LabelName(label()));
}

TagSequence ParseTags(std::span<const std::string> tags) {
  TagSequence out;
  out.reserve(tags.size());
  for (const auto &t : tags) out.push_back(Tag::Parse(t));
  return out;
}

std::vector<std::string> TagStrings(std::span<const Tag> tags) {
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (Tag t : tags) out.push_back(t.ToString());
  return out;
}

std::vector<std::string> Sentence::TokenTexts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) out.push_back(t.text);
  return out;
}

std::string Sentence::Key() const { return doc_id + ":" + std::to_string(index); }

std::string_view SubsetName(Subset s) {
  switch (s) {
    case Subset::kTrain: return "train";
    case Subset::kValid: return "valid";
    case Subset::kTest: return "test";
  }
  return "?";
}

std::vector<Sentence> Flatten(const Corpus &corpus) {
  std::vector<Sentence> out;
  for (const auto &doc : corpus) {
    out.insert(out.end(), doc.sentences.begin(), doc.sentences.end());
  }
  return out;
}

}  // namespace histner
