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

#ifndef POSSENSE_MODEL_FORMAT_H_
#define POSSENSE_MODEL_FORMAT_H_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "possense/model/errors.h"

namespace possense {

// Shortest decimal text that parses back to exactly `value`.
inline std::string FormatDouble(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

// Fixed-precision text, used for human-facing reports.
inline std::string FormatFixed(double value, int digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, digits);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

inline std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double ParseDouble(std::string_view text, int line = 0) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("not a number: '" + std::string(text) + "'", line);
  }
  return value;
}

// Accepts integral text or a real with zero fractional part ("3.0").
inline std::int64_t ParseInt(std::string_view text, int line = 0) {
  std::string_view t = Trim(text);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) {
    return value;
  }
  const double d = ParseDouble(t, line);
  if (std::floor(d) != d || std::abs(d) > 9.0e15) {
    throw ParseError("not an integer: '" + std::string(t) + "'", line);
  }
  return static_cast<std::int64_t>(d);
}

}  // namespace possense

#endif  // POSSENSE_MODEL_FORMAT_H_
