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

#ifndef POSSENSE_MODEL_TYPES_H_
#define POSSENSE_MODEL_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace possense {

inline constexpr std::size_t kAppearanceDim = 128;

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Axis-aligned box in pixels, (left, top) is the upper-left corner.
struct BBox {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  double area() const { return width * height; }
  double center_x() const { return left + 0.5 * width; }
  double center_y() const { return top + 0.5 * height; }
  bool valid() const { return width > 0.0 && height > 0.0; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct ImageSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

enum class ClassLabel {
  kPedestrian,
  kCyclist,
  kScooter,
  kSkater,
  kSitter,
  kPeopleOther,
  kNonPerson,
};

std::string_view ClassLabelName(ClassLabel label);
// Returns nullopt for unrecognized names; callers decide the fallback.
std::optional<ClassLabel> ParseClassLabel(std::string_view name);

// True for the six person classes; only non_person is excluded.
bool ClassIsPerson(ClassLabel label);

using Appearance = std::vector<float>;

struct Detection {
  int frame_index = 1;
  // Identity column of MOT-style files; -1 for raw detector output.
  int id = -1;
  BBox bbox;
  ClassLabel class_label = ClassLabel::kPedestrian;
  double confidence = 1.0;
  std::optional<std::vector<PixelPoint>> contour;
  // Unit norm when present.
  std::optional<Appearance> appearance;
  bool clamped = false;
};

// Detections of one frame, in ascending `left` order.
struct FrameDetections {
  int frame_index = 0;
  std::vector<Detection> detections;
};

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

// Processing cadence: every n_skip-th frame of an fps stream is processed.
class FrameClock {
 public:
  FrameClock() = default;
  FrameClock(double fps, int n_skip);

  double fps() const { return fps_; }
  int n_skip() const { return n_skip_; }
  double seconds_per_step() const { return n_skip_ / fps_; }
  // Time of a 1-based frame index, frame 1 at t = 0.
  double frame_time(int frame_index) const {
    return (frame_index - 1) / fps_;
  }

 private:
  double fps_ = 7.0;
  int n_skip_ = 1;
};

// Returns the unit-normalized copy of `v`; throws on a zero vector.
Appearance NormalizeAppearance(const Appearance& v);

// Clamps `box` to the image extent. Returns true if anything changed.
bool ClampToImage(BBox& box, const ImageSize& image);

}  // namespace possense

#endif  // POSSENSE_MODEL_TYPES_H_
