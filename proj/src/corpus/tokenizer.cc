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
#include "histner/utf8.h"

namespace histner {

std::vector<Token> Tokenize(std::string_view text) {
  const std::u32string cps = utf8::Decode(text);
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < cps.size()) {
    const char32_t cp = cps[i];
    if (utf8::IsSpace(cp)) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    if (utf8::IsWordChar(cp)) {
      while (j < cps.size() && utf8::IsWordChar(cps[j])) ++j;
    }
    tokens.push_back(
        Token{utf8::Encode(std::u32string_view(cps).substr(i, j - i)), i, j});
    i = j;
  }
  return tokens;
}

}  // namespace histner
