// Copyright 2026 The potgame Authors
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

#include "core/error.hpp"

#include <utility>

namespace potgame {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBounds: return "bounds";
    case ErrorCode::kOracle: return "oracle";
    case ErrorCode::kPath: return "path";
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kEnumeration: return "enumeration";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSemantic: return "semantic";
    case ErrorCode::kRefused: return "refused";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

namespace {

std::string format_parse_message(std::size_t line, std::size_t column,
                                 const std::string& message,
                                 const std::vector<std::string>& expected) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) +
                    ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k > 0) out += k + 1 == expected.size() ? " or " : ", ";
      out += expected[k];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message,
                       std::vector<std::string> expected)
    : Error(ErrorCode::kParse,
            format_parse_message(line, column, message, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace potgame
