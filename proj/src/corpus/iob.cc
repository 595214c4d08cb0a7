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

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

TagSequence EncodeIob(std::span<const EntitySpan> spans, size_t n_tokens) {
  TagSequence tags(n_tokens, Tag::Outside());
  std::vector<bool> taken(n_tokens, false);
  for (const EntitySpan &s : spans) {
    if (s.first > s.last || s.last >= n_tokens) {
      throw ValidationError("span [" + std::to_string(s.first) + ", " +
                            std::to_string(s.last) + "] outside " +
                            std::to_string(n_tokens) + " tokens");
    }
    for (size_t t = s.first; t <= s.last; ++t) {
      if (taken[t]) {
        throw ValidationError("overlapping spans at token " + std::to_string(t));
      }
      taken[t] = true;
      tags[t] = t == s.first ? Tag::Begin(s.label) : Tag::Inside(s.label);
    }
  }
  return tags;
}

std::vector<EntitySpan> DecodeIob(std::span<const Tag> tags) {
  std::vector<EntitySpan> spans;
  bool open = false;
  for (size_t t = 0; t < tags.size(); ++t) {
    const Tag tag = tags[t];
    if (tag.is_outside()) {
      open = false;
      continue;
    }
    const bool continues = tag.is_inside() && open &&
                           spans.back().label == tag.label() &&
                           spans.back().last + 1 == t;
    if (continues) {
      spans.back().last = t;
    } else {
      spans.push_back(EntitySpan{tag.label(), t, t, {}});
      open = true;
    }
  }
  return spans;
}

std::vector<EntitySpan> DecodeIob(std::span<const std::string> tags) {
  const TagSequence parsed = ParseTags(tags);
  return DecodeIob(parsed);
}

Sentence MakeSentence(std::string doc_id, size_t index, Region region,
                      std::vector<std::string> token_texts, TagSequence tags) {
  if (tags.size() != token_texts.size()) {
    throw ValidationError("sentence " + doc_id + ":" + std::to_string(index) +
                          " has " + std::to_string(token_texts.size()) +
                          " tokens but " + std::to_string(tags.size()) + " tags");
  }
  Sentence s;
  s.doc_id = std::move(doc_id);
  s.index = index;
  s.region = region;
  size_t offset = 0;
  for (auto &text : token_texts) {
    const size_t len = utf8::Decode(text).size();
    s.tokens.push_back(Token{std::move(text), offset, offset + len});
    offset += len + 1;
  }
  s.spans = DecodeIob(tags);
  for (auto &span : s.spans) {
    for (size_t t = span.first; t <= span.last; ++t) {
      if (t > span.first) span.surface += ' ';
      span.surface += s.tokens[t].text;
    }
  }
  s.tags = std::move(tags);
  return s;
}

}  // namespace histner
