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

#ifndef HISTNER_UTF8_H_
#define HISTNER_UTF8_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace histner::utf8 {

// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD, one per
// offending byte, so offsets stay well defined on dirty input.
std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view cps);
void AppendCodePoint(char32_t cp, std::string *out);

bool IsSpace(char32_t cp);
// Letters and digits; every code point outside the recognised punctuation,
// symbol and space blocks counts as a word character.
bool IsWordChar(char32_t cp);
char32_t ToLower(char32_t cp);

std::string ToLower(std::string_view text);
// True when the string has at least one word character.
bool HasWordChar(std::string_view text);

}  // namespace histner::utf8

#endif  // HISTNER_UTF8_H_
