// Copyright 2026 The inembed Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace inembed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain constraint (negative weight, unknown id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to stderr unless a handler is installed. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace inembed
