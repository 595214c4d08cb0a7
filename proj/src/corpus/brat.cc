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

#include <charconv>

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

namespace {

std::vector<std::string_view> SplitLines(std::string_view s) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) nl = s.size();
    std::string_view line = s.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

bool ParseOffset(std::string_view s, size_t *out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<RawSpan> ParseBrat(std::string_view text, std::string_view ann,
                               std::vector<std::string> *warnings) {
  const std::u32string cps = utf8::Decode(text);
  std::vector<RawSpan> spans;
  const auto lines = SplitLines(ann);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (line.empty()) continue;
    if (line[0] != 'T') {
      if (warnings) {
        warnings->push_back("line " + std::to_string(line_no) +
                            ": ignoring non-entity annotation");
      }
      continue;
    }
    const size_t tab1 = line.find('\t');
    if (tab1 == std::string_view::npos) {
      throw ParseError("expected ID<TAB>LABEL START END<TAB>SURFACE", line_no);
    }
    const size_t tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw ParseError("missing surface field", line_no);
    }
    const std::string_view middle = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const std::string_view surface = line.substr(tab2 + 1);
    if (middle.find(';') != std::string_view::npos) {
      throw UnsupportedError("line " + std::to_string(line_no) +
                             ": discontinuous spans are not supported");
    }
    const size_t sp1 = middle.find(' ');
    const size_t sp2 = sp1 == std::string_view::npos
                           ? std::string_view::npos
                           : middle.find(' ', sp1 + 1);
    if (sp2 == std::string_view::npos ||
        middle.find(' ', sp2 + 1) != std::string_view::npos) {
      throw ParseError("expected 'LABEL START END'", line_no);
    }
    const auto label = ParseLabel(middle.substr(0, sp1));
    if (!label) {
      throw ParseError("unknown entity label '" +
                           std::string(middle.substr(0, sp1)) + "'",
                       line_no);
    }
    RawSpan span;
    span.label = *label;
    if (!ParseOffset(middle.substr(sp1 + 1, sp2 - sp1 - 1), &span.start) ||
        !ParseOffset(middle.substr(sp2 + 1), &span.end)) {
      throw ParseError("offsets must be non-negative integers", line_no);
    }
    if (span.start >= span.end) {
      throw ParseError("empty or inverted span", line_no);
    }
    if (span.end > cps.size()) {
      throw AlignmentError("line " + std::to_string(line_no) +
                           ": span ends past the end of the text");
    }
    const std::string expected =
        utf8::Encode(std::u32string_view(cps).substr(span.start, span.end - span.start));
    if (expected != surface) {
      throw AlignmentError("line " + std::to_string(line_no) + ": surface '" +
                           std::string(surface) + "' does not match text '" +
                           expected + "'");
    }
    span.surface = std::string(surface);
    spans.push_back(std::move(span));
  }
  return spans;
}

Document BratToDocument(std::string id, Region region, std::optional<int> year,
                        std::string_view text, std::string_view ann,
                        std::vector<std::string> *warnings) {
  const std::vector<RawSpan> raw = ParseBrat(text, ann, warnings);
  const std::u32string cps = utf8::Decode(text);

  Document doc;
  doc.id = std::move(id);
  doc.region = region;
  doc.year = year;

  std::vector<bool> used(raw.size(), false);
  size_t line_start = 0;
  while (line_start <= cps.size()) {
    size_t line_end = cps.find(U'\n', line_start);
    if (line_end == std::u32string::npos) line_end = cps.size();
    const std::string line = utf8::Encode(
        std::u32string_view(cps).substr(line_start, line_end - line_start));
    std::vector<Token> tokens = Tokenize(line);
    if (!tokens.empty()) {
      std::vector<RawSpan> local;
      for (size_t k = 0; k < raw.size(); ++k) {
        const RawSpan &r = raw[k];
        if (r.start >= line_start && r.end <= line_end) {
          RawSpan shifted = r;
          shifted.start -= line_start;
          shifted.end -= line_start;
          local.push_back(std::move(shifted));
          used[k] = true;
        }
      }
      Sentence s;
      s.doc_id = doc.id;
      s.index = doc.sentences.size();
      s.region = region;
      s.spans = AlignSpans(line, tokens, local);
      s.tags = EncodeIob(s.spans, tokens.size());
      s.tokens = std::move(tokens);
      doc.sentences.push_back(std::move(s));
    }
    line_start = line_end + 1;
  }
  for (size_t k = 0; k < raw.size(); ++k) {
    if (!used[k]) {
      throw AlignmentError("entity '" + raw[k].surface + "' at " +
                           std::to_string(raw[k].start) + "-" +
                           std::to_string(raw[k].end) +
                           " crosses a sentence boundary or covers no token");
    }
  }
  return doc;
}

}  // namespace histner
