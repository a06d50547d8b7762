// Copyright 2026 The torodyn authors
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

#ifndef TORODYN_ERROR_HPP
#define TORODYN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torodyn {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error in the expression DSL or a map file. `offset` is the byte
// offset of the offending token in the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Runtime evaluation error (division by zero), located by the byte offset of
// the operator in the original source.
class EvalError : public Error {
 public:
  EvalError(const std::string& msg, std::size_t offset)
      : Error(msg + " (node at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Precondition or input validation failure (periodicity violation, bad
// parameters, raster mismatch, margin violation, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A construction ran but its result failed verification at the current
// resolution / truncation (circloid validation, lamination properties,
// semi-conjugacy defect threshold). Never silently accepted.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Orbit iteration problems: budget exceeded or missing inverse.
class IterationError : public Error {
 public:
  using Error::Error;
};

}  // namespace torodyn

#endif  // TORODYN_ERROR_HPP
