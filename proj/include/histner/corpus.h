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

#ifndef HISTNER_CORPUS_H_
#define HISTNER_CORPUS_H_

// Corpus model and preprocessing: BRAT ingestion, tokenization, span
// alignment, IOB2 encoding, validation, splitting and statistics.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace histner {

enum class Region : uint8_t {
  kBessarabia = 0,
  kMoldavia = 1,
  kTransylvania = 2,
  kWallachia = 3,
};
inline constexpr int kNumRegions = 4;
inline constexpr std::array<Region, kNumRegions> kAllRegions = {
    Region::kBessarabia, Region::kMoldavia, Region::kTransylvania,
    Region::kWallachia};

enum class EntityLabel : uint8_t {
  kPerson = 0,
  kOrganisation = 1,
  kLocation = 2,
  kProduct = 3,
  kDate = 4,
};
inline constexpr int kNumLabels = 5;
inline constexpr std::array<EntityLabel, kNumLabels> kAllLabels = {
    EntityLabel::kPerson, EntityLabel::kOrganisation, EntityLabel::kLocation,
    EntityLabel::kProduct, EntityLabel::kDate};

constexpr int Index(Region r) { return static_cast<int>(r); }
constexpr int Index(EntityLabel l) { return static_cast<int>(l); }

std::string_view RegionName(Region r);       // "Bessarabia"
std::string_view RegionShortName(Region r);  // "Bess."
std::string_view LabelName(EntityLabel l);   // "ORGANISATION"
// Accepts the canonical names case-insensitively plus common aliases
// (Romanian region names; PERS/ORG/ORGANIZATION/LOC/PROD label codes).
std::optional<Region> ParseRegion(std::string_view s);
std::optional<EntityLabel> ParseLabel(std::string_view s);

// One of the 11 IOB2 tags. Code 0 is O, 1 + 2l is B-l and 2 + 2l is I-l.
class Tag {
 public:
  static constexpr int kCount = 1 + 2 * kNumLabels;

  constexpr Tag() = default;
  static constexpr Tag Outside() { return Tag(0); }
  static constexpr Tag Begin(EntityLabel l) { return Tag(1 + 2 * Index(l)); }
  static constexpr Tag Inside(EntityLabel l) { return Tag(2 + 2 * Index(l)); }
  static Tag FromCode(int code);
  // Throws ParseError on anything outside the alphabet.
  static Tag Parse(std::string_view s);

  constexpr int code() const { return code_; }
  constexpr bool is_outside() const { return code_ == 0; }
  constexpr bool is_begin() const { return code_ % 2 == 1; }
  constexpr bool is_inside() const { return code_ != 0 && code_ % 2 == 0; }
  // Only meaningful when !is_outside().
  constexpr EntityLabel label() const {
    return static_cast<EntityLabel>((code_ - 1) / 2);
  }
  std::string ToString() const;

  friend constexpr bool operator==(Tag, Tag) = default;

 private:
  constexpr explicit Tag(int code) : code_(code) {}
  int code_ = 0;
};

using TagSequence = std::vector<Tag>;

TagSequence ParseTags(std::span<const std::string> tags);
std::vector<std::string> TagStrings(std::span<const Tag> tags);

// Offsets are in Unicode code points, end exclusive.
struct Token {
  std::string text;
  size_t start = 0;
  size_t end = 0;

  friend bool operator==(const Token &, const Token &) = default;
};

// Token-indexed entity mention, last inclusive. Equality ignores the
// surface string, which is derived data.
struct EntitySpan {
  EntityLabel label = EntityLabel::kPerson;
  size_t first = 0;
  size_t last = 0;
  std::string surface;

  friend bool operator==(const EntitySpan &a, const EntitySpan &b) {
    return a.label == b.label && a.first == b.first && a.last == b.last;
  }
};

// Character-offset annotation as it appears in a standoff file.
struct RawSpan {
  EntityLabel label = EntityLabel::kPerson;
  size_t start = 0;
  size_t end = 0;
  std::string surface;

  friend bool operator==(const RawSpan &, const RawSpan &) = default;
};

struct Sentence {
  std::string doc_id;
  size_t index = 0;  // position within its document
  Region region = Region::kBessarabia;
  std::vector<Token> tokens;
  std::vector<EntitySpan> spans;
  TagSequence tags;

  std::vector<std::string> TokenTexts() const;
  // "doc_id:index", the identity used by split files.
  std::string Key() const;
};

struct Document {
  std::string id;
  Region region = Region::kBessarabia;
  std::optional<int> year;
  std::vector<Sentence> sentences;
};

using Corpus = std::vector<Document>;

inline constexpr int kMinYear = 1817;
inline constexpr int kMaxYear = 1990;

// ---- BRAT standoff ----------------------------------------------------------

// Parses the `T` lines of a .ann file against its .txt content. Other
// annotation kinds are skipped and reported through `warnings`.
std::vector<RawSpan> ParseBrat(std::string_view text, std::string_view ann,
                               std::vector<std::string> *warnings = nullptr);

// Builds a document from a .txt/.ann pair. Every non-blank line of the text
// is one sentence; an entity crossing a line break is an AlignmentError.
Document BratToDocument(std::string id, Region region, std::optional<int> year,
                        std::string_view text, std::string_view ann,
                        std::vector<std::string> *warnings = nullptr);

// ---- tokenization and alignment ---------------------------------------------

// Maximal runs of word characters are tokens, every other non-space code
// point is a token of its own.
std::vector<Token> Tokenize(std::string_view text);

// Maps character spans onto the smallest window of whole tokens that covers
// them. `text` is the source the token offsets refer to.
std::vector<EntitySpan> AlignSpans(std::string_view text,
                                   std::span<const Token> tokens,
                                   std::span<const RawSpan> raw);

// ---- IOB2 -------------------------------------------------------------------

TagSequence EncodeIob(std::span<const EntitySpan> spans, size_t n_tokens);
// Stray I-X (not continuing a B-X/I-X of the same X) opens a new span.
std::vector<EntitySpan> DecodeIob(std::span<const Tag> tags);
std::vector<EntitySpan> DecodeIob(std::span<const std::string> tags);

// Assembles a sentence from token strings and tags. Offsets are synthesized
// as if tokens were joined with single spaces.
Sentence MakeSentence(std::string doc_id, size_t index, Region region,
                      std::vector<std::string> token_texts, TagSequence tags);

// ---- validation -------------------------------------------------------------

struct Violation {
  std::string doc_id;
  size_t sentence = 0;
  std::string message;
};

std::vector<Violation> Validate(const Document &doc);
std::vector<Violation> Validate(const Corpus &corpus);

// ---- splitting --------------------------------------------------------------

struct SplitSpec {
  double train_ratio = 0.8;
  double valid_ratio = 0.1;
  double test_ratio = 0.1;
  uint64_t seed = 0;
};

enum class Subset : uint8_t { kTrain = 0, kValid = 1, kTest = 2 };
std::string_view SubsetName(Subset s);

struct DatasetSplit {
  std::vector<Sentence> train;
  std::vector<Sentence> valid;
  std::vector<Sentence> test;
};

std::vector<Sentence> Flatten(const Corpus &corpus);

// Sentence-level split stratified by region. Subset sizes are
// round(N * valid), round(N * test) and the remainder for train; each
// region's share of each subset is the floor or ceiling of its exact quota.
DatasetSplit SplitDataset(const Corpus &corpus, const SplitSpec &spec);

// Sentence key -> subset, as read from a precomputed split file.
using SplitAssignment = std::map<std::string, Subset>;

DatasetSplit ApplySplit(const Corpus &corpus, const SplitAssignment &split);
// JSON object {"train": [keys], "valid": [...], "test": [...]}.
SplitAssignment ReadSplitFile(std::istream &in);
void WriteSplitFile(const SplitAssignment &split, std::ostream &out);
SplitAssignment AssignmentOf(const DatasetSplit &split);

// ---- statistics -------------------------------------------------------------

struct EntityCounts {
  int64_t tokens = 0;
  int64_t entities = 0;
  // 0 when there are no entities.
  double TokensPerEntity() const;
};

struct CorpusStatistics {
  int64_t sentences = 0;
  int64_t tokens = 0;
  std::array<int64_t, kNumRegions> region_sentences{};
  std::array<int64_t, kNumRegions> region_tokens{};
  // [label][region]
  std::array<std::array<EntityCounts, kNumRegions>, kNumLabels> cells{};

  EntityCounts LabelTotal(EntityLabel l) const;
  EntityCounts RegionTotal(Region r) const;
  EntityCounts Total() const;
};

CorpusStatistics ComputeStatistics(const Corpus &corpus);
CorpusStatistics ComputeStatistics(std::span<const Sentence> sentences);

// Table with one block per entity label and a grand total.
void PrintStatistics(const CorpusStatistics &stats, std::ostream &out);

// ---- serialization ----------------------------------------------------------

// One sentence per line: {"doc_id", "region", "tokens", "tags", "year"?}.
void SaveJsonl(const Corpus &corpus, std::ostream &out);
void SaveJsonl(std::span<const Sentence> sentences, std::ostream &out,
               const std::map<std::string, int> *years = nullptr);
// Groups consecutive-or-not lines by doc_id in first-seen order.
Corpus LoadJsonl(std::istream &in);

// "token TAB tag" per line, blank line after each sentence.
void ExportConll(std::span<const Sentence> sentences, std::ostream &out);
void ExportConll(const Corpus &corpus, std::ostream &out);

// ---- public release ingestion -------------------------------------------------

struct IngestedDataset {
  Corpus corpus;
  SplitAssignment split;
};

// Reads a directory holding train/valid/test files (JSON lines or a JSON
// array per file; names containing "train", "valid"/"validation"/"dev" and
// "test"). Records carry tokens, tags as strings or integer ids
// (`ner_tags`), a region and a document id. Integer ids are resolved with
// `tag_names`, defaulting to the 11-tag alphabet in code order.
IngestedDataset LoadHistNero(const std::string &dir,
                             const std::vector<std::string> &tag_names = {});

}  // namespace histner

#endif  // HISTNER_CORPUS_H_
