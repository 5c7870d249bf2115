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

#ifndef POSSENSE_MODEL_TRAJECTORY_H_
#define POSSENSE_MODEL_TRAJECTORY_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "possense/model/types.h"

namespace possense {

// One world-mapped observation of a tracked identity.
struct TrajectorySample {
  int track_id = 0;
  int frame_index = 0;
  double time_s = 0.0;
  double x = 0.0;  // meters on the ground plane
  double y = 0.0;
  BBox box;
  double confidence = 1.0;
  // Image-plane vertical rate of the box center, pixels per frame.
  double vy_px = 0.0;
  ClassLabel class_label = ClassLabel::kPedestrian;
  std::optional<std::vector<PixelPoint>> contour;
};

// Samples keyed by track id, each list in increasing time.
using TrajectorySet = std::map<int, std::vector<TrajectorySample>>;

TrajectorySet GroupByTrack(const std::vector<TrajectorySample>& samples);

// CSV with header
// frame,track_id,time_s,x_m,y_m,left,top,width,height,conf,vy_px,class,contour
// ordered by frame then track id. The contour column is "u v;u v;..." or
// empty.
void WriteTrajectories(std::ostream& out, const TrajectorySet& set);
TrajectorySet ReadTrajectories(std::istream& in);
TrajectorySet ReadTrajectoryFile(const std::filesystem::path& path);

}  // namespace possense

#endif  // POSSENSE_MODEL_TRAJECTORY_H_
