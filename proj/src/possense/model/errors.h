// Copyright 2026 The possense Authors.
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

#ifndef POSSENSE_MODEL_ERRORS_H_
#define POSSENSE_MODEL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace possense {

enum class ErrorCode {
  kIo,
  kParse,
  kConfig,
  kNumerical,
  kBehindCamera,
  kHorizon,
  kOutOfImage,
  kCalibration,
  kInvalidArgument,
  kUndefined,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every failure the engine reports. The code is what the
// CLI serializes into its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure tied to a location in an input file. line == 0 means the
// error is not attributable to a single line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0)
      : Error(ErrorCode::kParse,
              line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace possense

#endif  // POSSENSE_MODEL_ERRORS_H_
