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

#ifndef POSSENSE_GROUPING_TRAJECTORY_WINDOW_H_
#define POSSENSE_GROUPING_TRAJECTORY_WINDOW_H_

#include <map>
#include <vector>

#include <Eigen/Core>

#include "possense/model/trajectory.h"

namespace possense::grouping {

struct WindowSample {
  int frame_index = 0;
  double t = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // meters
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // m/s
};

// The identities observed during one clustering window [start, end).
struct TrajectoryWindow {
  int window_id = 0;
  double start = 0.0;
  double end = 0.0;
  // Every member has at least two samples with strictly increasing time.
  std::map<int, std::vector<WindowSample>> members;

  std::vector<int> member_ids() const;
};

// Sliding windows [origin + k*stride, origin + k*stride + window); the last
// window is closed on the right so the final sample is not lost. Tracks with
// fewer than two in-window samples are left out of that window. Velocities
// are central differences, one-sided at the ends.
std::vector<TrajectoryWindow> BuildWindows(const TrajectorySet& tracks,
                                           double window_seconds,
                                           double stride_seconds,
                                           double origin_seconds = 0.0);

// Builds a single window from raw samples (used by tests and by callers
// that already know the span).
TrajectoryWindow MakeWindow(int window_id, double start, double end,
                            const TrajectorySet& tracks, bool closed_right);

// Samples of i and j taken at the same frame, in frame order.
struct CoOccurrence {
  std::vector<const WindowSample*> a;
  std::vector<const WindowSample*> b;
  std::size_t size() const { return a.size(); }
};
CoOccurrence CoOccurring(const TrajectoryWindow& win, int i, int j);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_TRAJECTORY_WINDOW_H_
