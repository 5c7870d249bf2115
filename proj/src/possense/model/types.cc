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

#include "possense/model/types.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "possense/model/errors.h"

namespace possense {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kBehindCamera: return "behind_camera";
    case ErrorCode::kHorizon: return "horizon";
    case ErrorCode::kOutOfImage: return "out_of_image";
    case ErrorCode::kCalibration: return "calibration";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUndefined: return "undefined";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::pair<ClassLabel, std::string_view>, 7> kClassNames{{
    {ClassLabel::kPedestrian, "pedestrian"},
    {ClassLabel::kCyclist, "cyclist"},
    {ClassLabel::kScooter, "scooter"},
    {ClassLabel::kSkater, "skater"},
    {ClassLabel::kSitter, "sitter"},
    {ClassLabel::kPeopleOther, "people_other"},
    {ClassLabel::kNonPerson, "non_person"},
}};

}  // namespace

std::string_view ClassLabelName(ClassLabel label) {
  for (const auto& [l, name] : kClassNames) {
    if (l == label) return name;
  }
  return "people_other";
}

std::optional<ClassLabel> ParseClassLabel(std::string_view name) {
  for (const auto& [l, n] : kClassNames) {
    if (n == name) return l;
  }
  return std::nullopt;
}

bool ClassIsPerson(ClassLabel label) { return label != ClassLabel::kNonPerson; }

FrameClock::FrameClock(double fps, int n_skip) : fps_(fps), n_skip_(n_skip) {
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  }
  if (n_skip < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_skip must be >= 1");
  }
}

Appearance NormalizeAppearance(const Appearance& v) {
  double norm2 = 0.0;
  for (float x : v) norm2 += static_cast<double>(x) * x;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw Error(ErrorCode::kInvalidArgument, "zero-norm appearance vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  Appearance out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<float>(v[i] * inv);
  }
  return out;
}

bool ClampToImage(BBox& box, const ImageSize& image) {
  const double w = image.width;
  const double h = image.height;
  const double l = std::clamp(box.left, 0.0, w);
  const double t = std::clamp(box.top, 0.0, h);
  const double r = std::clamp(box.right(), 0.0, w);
  const double b = std::clamp(box.bottom(), 0.0, h);
  BBox clamped{l, t, r - l, b - t};
  const bool changed = !(clamped == box);
  box = clamped;
  return changed;
}

}  // namespace possense
