// Copyright 2026 The newsrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSREC_ERRORS_H_
#define NEWSREC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace newsrec {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (TSV, JSON-lines). Message carries line/token.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Binary file with a bad header (magic, version, dimension).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Binary file whose records are truncated or inconsistent.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class MissingIdError : public Error {
 public:
  using Error::Error;
};

// Shape mismatch between operands; message names both shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Pooling over zero rows (empty title, empty history).
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration; message starts with the dotted field path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace newsrec

#endif  // NEWSREC_ERRORS_H_
