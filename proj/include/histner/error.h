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

#ifndef HISTNER_ERROR_H_
#define HISTNER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace histner {

// Base of every error the library throws. Callers that only need to
// distinguish "bad data" from "bad usage" can catch this and ConfigError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, size_t line);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Annotation offsets that do not agree with the text or token grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Input uses a format feature we deliberately do not support.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Structural invariant violated (overlapping spans, length mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Incompatible array shapes in an autodiff op.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf produced by a computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace histner

#endif  // HISTNER_ERROR_H_
