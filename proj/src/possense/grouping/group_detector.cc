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

#include "possense/grouping/group_detector.h"

#include <cmath>

#include "possense/grouping/granger.h"
#include "possense/grouping/path_convergence.h"
#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kConfig, what);
}

TrajectoryWindow ParallelPair(const GroupingParams& p, double offset) {
  TrajectoryWindow win;
  win.start = 0.0;
  win.end = p.window_s;
  const int frames =
      static_cast<int>(std::floor(p.window_s * p.reference_fps)) + 1;
  for (int id = 0; id < 2; ++id) {
    std::vector<WindowSample> s;
    for (int f = 0; f < frames; ++f) {
      const double t = f / p.reference_fps;
      s.push_back({f + 1, t, {p.reference_speed * t, id * offset},
                   {p.reference_speed, 0.0}});
    }
    win.members.emplace(id, std::move(s));
  }
  return win;
}

}  // namespace

void GroupingParams::Validate() const {
  if (!(window_s > 0.0)) Bad("grouping.window_s must be > 0");
  if (!(stride_s > 0.0) || stride_s > window_s) {
    Bad("grouping.stride_s must be in (0, grouping.window_s]");
  }
  if (!(tau_s > 0.0)) Bad("grouping.tau_s must be > 0");
  if (!(tau_v > 0.0)) Bad("grouping.tau_v must be > 0");
  if (!(lambda_loc >= 0.0 && lambda_loc <= 1.0)) {
    Bad("grouping.lambda_loc must be in [0, 1]");
  }
  if (granger_order < 1) Bad("grouping.granger_order must be >= 1");
  if (!(grid_res > 0.0)) Bad("grouping.grid_res must be > 0");
  if (!(grid_pad >= 0.0)) Bad("grouping.grid_pad must be >= 0");
  if (!(negative_fraction >= 0.0)) {
    Bad("grouping.negative_fraction must be >= 0");
  }
  if (!(reference_near_m >= 0.0 && reference_near_m < tau_s)) {
    Bad("grouping.reference_near_m must be in [0, grouping.tau_s)");
  }
  if (!(reference_speed > 0.0)) Bad("grouping.reference_speed must be > 0");
  if (!(reference_fps > 0.0)) Bad("grouping.reference_fps must be > 0");
  if (exact_limit < 0 || exact_limit > 14) {
    Bad("grouping.exact_limit must be in [0, 14]");
  }
  weights.Validate();
}

FeatureRange ReferenceRange(const GroupingParams& params) {
  const TrajectoryWindow near = ParallelPair(params, params.reference_near_m);
  const TrajectoryWindow far = ParallelPair(params, params.tau_s);
  FeatureRange r;
  r.lo[0] = *ProxemicsF1(far, 0, 1);
  r.hi[0] = *ProxemicsF1(near, 0, 1);
  r.lo[1] = DtwF2(near, 0, 1).f2;
  r.hi[1] = DtwF2(far, 0, 1).f2;
  r.lo[2] = std::log(2.0);
  r.hi[2] = std::log(11.0);
  r.lo[3] = PathConvergenceF4(far, 0, 1, params.grid_res, params.grid_pad);
  r.hi[3] = PathConvergenceF4(near, 0, 1, params.grid_res, params.grid_pad);
  return r;
}

PairFeatures ComputePairFeatures(const TrajectoryWindow& win, int i, int j,
                                 const GroupingParams& params) {
  PairFeatures p;
  p.i = i;
  p.j = j;
  const CoOccurrence co = CoOccurring(win, i, j);
  p.co_occurring = static_cast<int>(co.size());
  const FrameFeatureBounds bounds = params.frame_bounds();
  double sum = 0.0;
  for (std::size_t k = 0; k < co.size(); ++k) {
    const auto f = FrameFeature(co.a[k]->position, co.b[k]->position,
                                co.a[k]->velocity, co.b[k]->velocity, bounds,
                                params.lambda_loc, params.tau_s, params.tau_v);
    if (f) {
      ++p.frames_passing;
      sum += *f;
    }
  }
  if (p.frames_passing > 0) p.frame_feature_mean = sum / p.frames_passing;
  p.filtered = p.frames_passing == 0;
  if (co.size() == 0) return p;
  p.f1 = *ProxemicsF1(win, i, j);
  p.f2 = DtwF2(win, i, j).f2;
  const GrangerResult g = GrangerF3(win, i, j, params.granger_order);
  p.f3 = g.score;
  p.granger_degenerate = g.degenerate;
  p.f4 = PathConvergenceF4(win, i, j, params.grid_res, params.grid_pad);
  return p;
}

WindowResult DetectGroups(const TrajectoryWindow& win,
                          const GroupingParams& params,
                          const FeatureRange& reference) {
  WindowResult out;
  out.window_id = win.window_id;
  out.start = win.start;
  out.end = win.end;
  const std::vector<int> ids = win.member_ids();
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      out.pairs.push_back(ComputePairFeatures(win, ids[a], ids[b], params));
      if (out.pairs.back().granger_degenerate) ++out.granger_degenerate_pairs;
    }
  }
  const FeatureRange range = params.normalization == Normalization::kWindow
                                 ? WindowRange(out.pairs)
                                 : reference;
  out.affinity = BuildAffinity(ids, out.pairs, range, params.weights,
                               params.negative_fraction);
  out.partition = CorrelationClustering(out.affinity, params.exact_limit);
  return out;
}

WindowResult DetectGroups(const TrajectoryWindow& win,
                          const GroupingParams& params) {
  return DetectGroups(win, params, ReferenceRange(params));
}

std::vector<WindowResult> DetectGroupsAll(const TrajectorySet& tracks,
                                          const GroupingParams& params) {
  params.Validate();
  const FeatureRange reference = ReferenceRange(params);
  std::vector<WindowResult> out;
  for (const auto& win :
       BuildWindows(tracks, params.window_s, params.stride_s)) {
    out.push_back(DetectGroups(win, params, reference));
  }
  return out;
}

}  // namespace possense::grouping
