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

#include "possense/grouping/trajectory_window.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

constexpr double kTimeSlack = 1e-9;

void EstimateVelocities(std::vector<WindowSample>& s) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
    const double dt = s[hi].t - s[lo].t;
    s[k].velocity = dt > 0.0 ? Eigen::Vector2d((s[hi].position - s[lo].position) / dt)
                             : Eigen::Vector2d::Zero();
  }
}

}  // namespace

std::vector<int> TrajectoryWindow::member_ids() const {
  std::vector<int> ids;
  ids.reserve(members.size());
  for (const auto& [id, s] : members) ids.push_back(id);
  return ids;
}

TrajectoryWindow MakeWindow(int window_id, double start, double end,
                            const TrajectorySet& tracks, bool closed_right) {
  TrajectoryWindow win;
  win.window_id = window_id;
  win.start = start;
  win.end = end;
  for (const auto& [id, samples] : tracks) {
    std::vector<WindowSample> in;
    for (const auto& s : samples) {
      const bool after_start = s.time_s >= start - kTimeSlack;
      const bool before_end = closed_right ? s.time_s <= end + kTimeSlack
                                           : s.time_s < end - kTimeSlack;
      if (!after_start || !before_end) continue;
      if (!in.empty() && !(s.time_s > in.back().t)) continue;
      in.push_back({s.frame_index, s.time_s, {s.x, s.y}, {0.0, 0.0}});
    }
    if (in.size() < 2) continue;
    EstimateVelocities(in);
    win.members.emplace(id, std::move(in));
  }
  return win;
}

std::vector<TrajectoryWindow> BuildWindows(const TrajectorySet& tracks,
                                           double window_seconds,
                                           double stride_seconds,
                                           double origin_seconds) {
  if (!(window_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "window length must be > 0");
  }
  if (!(stride_seconds > 0.0) || stride_seconds > window_seconds) {
    throw Error(ErrorCode::kInvalidArgument,
                "stride must be in (0, window length]");
  }
  double t_max = -std::numeric_limits<double>::infinity();
  for (const auto& [id, samples] : tracks) {
    for (const auto& s : samples) t_max = std::max(t_max, s.time_s);
  }
  if (!std::isfinite(t_max)) return {};
  const double span = t_max - origin_seconds;
  int count = 1;
  if (span > window_seconds) {
    count = static_cast<int>(
                std::ceil((span - window_seconds) / stride_seconds - 1e-9)) +
            1;
  }
  std::vector<TrajectoryWindow> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double start = origin_seconds + k * stride_seconds;
    out.push_back(MakeWindow(k, start, start + window_seconds, tracks,
                             k + 1 == count));
  }
  return out;
}

CoOccurrence CoOccurring(const TrajectoryWindow& win, int i, int j) {
  CoOccurrence co;
  const auto ia = win.members.find(i);
  const auto ib = win.members.find(j);
  if (ia == win.members.end() || ib == win.members.end()) return co;
  const auto& a = ia->second;
  const auto& b = ib->second;
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p].frame_index < b[q].frame_index) {
      ++p;
    } else if (b[q].frame_index < a[p].frame_index) {
      ++q;
    } else {
      co.a.push_back(&a[p++]);
      co.b.push_back(&b[q++]);
    }
  }
  return co;
}

}  // namespace possense::grouping
