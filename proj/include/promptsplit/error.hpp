// Copyright 2026 The promptsplit Authors.
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

#ifndef PROMPTSPLIT_ERROR_HPP_
#define PROMPTSPLIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace promptsplit {

// Malformed or inconsistent input data. Maps to CLI exit status 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message)
      : std::runtime_error(message) {}

  // Prefixes the message with "<source>:<line>: ".
  DataError(const std::string& source, std::size_t line,
            const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Invalid arguments or configuration. Maps to CLI exit status 1.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& message)
      : std::invalid_argument(message) {}
};

// A floor constraint that no assignment can meet. Maps to CLI exit status 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace promptsplit

#endif  // PROMPTSPLIT_ERROR_HPP_
