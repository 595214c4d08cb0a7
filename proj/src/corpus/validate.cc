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
#include <set>

#include "histner/corpus.h"
#include "histner/utf8.h"

namespace histner {

namespace {

void CheckSentence(const Document &doc, size_t si, const Sentence &s,
                   std::vector<Violation> *out) {
  auto report = [&](std::string msg) {
    out->push_back(Violation{doc.id, si, std::move(msg)});
  };
  const size_t n = s.tokens.size();
  if (s.region != doc.region) {
    report("sentence region differs from document region");
  }
  for (size_t t = 0; t < n; ++t) {
    const Token &tok = s.tokens[t];
    if (tok.start >= tok.end) {
      report("token " + std::to_string(t) + " has empty or inverted offsets");
    } else if (utf8::Decode(tok.text).size() != tok.end - tok.start) {
      report("token " + std::to_string(t) + " text length disagrees with offsets");
    }
    if (t > 0 && tok.start < s.tokens[t - 1].end) {
      report("token " + std::to_string(t) + " overlaps or precedes token " +
             std::to_string(t - 1));
    }
  }
  if (s.tags.size() != n) {
    report("tag count " + std::to_string(s.tags.size()) + " != token count " +
           std::to_string(n));
  }
  bool spans_ok = true;
  for (size_t a = 0; a < s.spans.size(); ++a) {
    const EntitySpan &x = s.spans[a];
    if (x.first > x.last || x.last >= n) {
      report("span " + std::to_string(a) + " [" + std::to_string(x.first) + ", " +
             std::to_string(x.last) + "] outside the token range");
      spans_ok = false;
      continue;
    }
    for (size_t b = a + 1; b < s.spans.size(); ++b) {
      const EntitySpan &y = s.spans[b];
      if (y.first > y.last || y.last >= n) continue;
      if (x.first <= y.last && y.first <= x.last) {
        const bool nested = (x.first <= y.first && y.last <= x.last) ||
                            (y.first <= x.first && x.last <= y.last);
        report(std::string(nested ? "nested" : "overlapping") + " spans " +
               std::to_string(a) + " and " + std::to_string(b));
        spans_ok = false;
      }
    }
  }
  if (s.tags.size() == n) {
    for (size_t t = 0; t < n; ++t) {
      const Tag tag = s.tags[t];
      if (!tag.is_inside()) continue;
      const Tag prev = t > 0 ? s.tags[t - 1] : Tag::Outside();
      if (prev.is_outside() || prev.label() != tag.label()) {
        report("tag " + tag.ToString() + " at token " + std::to_string(t) +
               " does not continue an entity");
      }
    }
    if (spans_ok) {
      std::vector<EntitySpan> sorted = s.spans;
      std::sort(sorted.begin(), sorted.end(),
                [](const EntitySpan &a, const EntitySpan &b) { return a.first < b.first; });
      if (DecodeIob(s.tags) != sorted) {
        report("tags do not encode the sentence's spans");
      }
    }
  }
}

}  // namespace

std::vector<Violation> Validate(const Document &doc) {
  std::vector<Violation> out;
  if (doc.year && (*doc.year < kMinYear || *doc.year > kMaxYear)) {
    out.push_back(Violation{doc.id, 0,
                            "year " + std::to_string(*doc.year) + " outside [" +
                                std::to_string(kMinYear) + ", " +
                                std::to_string(kMaxYear) + "]"});
  }
  for (size_t si = 0; si < doc.sentences.size(); ++si) {
    CheckSentence(doc, si, doc.sentences[si], &out);
  }
  return out;
}

std::vector<Violation> Validate(const Corpus &corpus) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const Document &doc : corpus) {
    if (!seen.insert(doc.id).second) {
      out.push_back(Violation{doc.id, 0, "duplicate document id"});
    }
    auto v = Validate(doc);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace histner
