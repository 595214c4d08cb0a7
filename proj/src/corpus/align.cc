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

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

std::vector<EntitySpan> AlignSpans(std::string_view text,
                                   std::span<const Token> tokens,
                                   std::span<const RawSpan> raw) {
  const std::u32string cps = utf8::Decode(text);
  std::vector<EntitySpan> out;
  out.reserve(raw.size());
  for (const RawSpan &r : raw) {
    if (r.start >= r.end || r.end > cps.size()) {
      throw AlignmentError("span " + std::to_string(r.start) + "-" +
                           std::to_string(r.end) + " lies outside the text");
    }
    // First token ending after the span start, last token starting before
    // the span end: the smallest window of whole tokens covering the span.
    size_t first = tokens.size();
    size_t last = tokens.size();
    for (size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t].end > r.start && tokens[t].start < r.end) {
        if (first == tokens.size()) first = t;
        last = t;
      }
    }
    if (first == tokens.size()) {
      throw AlignmentError("span " + std::to_string(r.start) + "-" +
                           std::to_string(r.end) + " covers no token");
    }
    EntitySpan span;
    span.label = r.label;
    span.first = first;
    span.last = last;
    span.surface = utf8::Encode(std::u32string_view(cps).substr(
        tokens[first].start, tokens[last].end - tokens[first].start));
    out.push_back(std::move(span));
  }
  std::sort(out.begin(), out.end(), [](const EntitySpan &a, const EntitySpan &b) {
    return a.first != b.first ? a.first < b.first : a.last < b.last;
  });
  for (size_t k = 1; k < out.size(); ++k) {
    if (out[k].first <= out[k - 1].last) {
      throw ValidationError("entities '" + out[k - 1].surface + "' and '" +
                            out[k].surface +
                            "' overlap after token alignment (nested or "
                            "overlapping entities are not allowed)");
    }
  }
  return out;
}

}  // namespace histner
