// Copyright 2026 The UML Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UML_ARENA_ERRORS_H_
#define UML_ARENA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace uml_arena {

// Base class for every error raised by the library.
class ArenaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown identifier (game, opponent, schedule, ...).
class LookupError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// Argument outside of its mathematical domain.
class DomainError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// A caller broke a documented precondition.
class ContractViolation : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// An observed loss is not a member of the loss support.
class SupportViolation : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// An observed loss contradicts a previously observed one for the same cell.
class InconsistencyError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// A file could not be read or written.
class IoError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// Configuration text could not be parsed or validated. `line` is 1-based,
// 0 when the error is not tied to a line.
class ConfigError : public ArenaError {
 public:
  ConfigError(int line, const std::string& what)
      : ArenaError(line > 0 ? "line " + std::to_string(line) + ": " + what
                            : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace uml_arena

#endif  // UML_ARENA_ERRORS_H_
