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

#ifndef POSSENSE_EVALUATION_MOT_METRICS_H_
#define POSSENSE_EVALUATION_MOT_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "possense/model/types.h"

namespace possense::evaluation {

struct MotRecord {
  int frame_index = 0;
  int id = 0;
  BBox box;
  double confidence = 1.0;
};

// Frame index -> records of that frame.
using MotSequence = std::map<int, std::vector<MotRecord>>;

// MOT-16 rows "frame,id,left,top,width,height,conf[,...]". With
// skip_zero_flag set, rows whose seventh column is 0 are dropped (the
// ground-truth "ignore" flag).
MotSequence ReadMot(std::istream& in, bool skip_zero_flag);
MotSequence ReadMotFile(const std::filesystem::path& path, bool skip_zero_flag);
void WriteMot(std::ostream& out, const MotSequence& seq);

struct FrameMatch {
  std::vector<std::pair<int, int>> matches;  // (gt id, pred id)
  std::vector<double> ious;
  int false_negatives = 0;
  int false_positives = 0;
};

// Correspondences carried over from the previous frame (gt id -> pred id)
// are kept when they still overlap by iou_min; the rest is solved by
// minimum-cost assignment on 1 - IoU.
FrameMatch MatchFrame(std::span<const MotRecord> gt,
                      std::span<const MotRecord> pred, double iou_min,
                      const std::map<int, int>& previous = {});

// 1 - (FN + FP + IDs) / GT; throws kUndefined when GT is 0.
double Mota(std::int64_t fn, std::int64_t fp, std::int64_t ids,
            std::int64_t gt);
// Mean IoU; throws kUndefined without matches.
double Motp(std::span<const double> ious);

struct Coverage {
  int mostly_tracked = 0;
  int partially_tracked = 0;
  int mostly_lost = 0;
};
// Per identity (matched frames, ground-truth frames).
Coverage TrackCoverage(
    const std::map<int, std::pair<int, int>>& matched_and_total);

// Per-frame (gt id, pred id) correspondences in frame order.
int CountIdSwitches(
    const std::vector<std::vector<std::pair<int, int>>>& per_frame);

struct MotReport {
  std::optional<double> mota;
  std::optional<double> motp;
  std::optional<double> precision;
  std::optional<double> recall;
  int gt_tracks = 0;
  int mostly_tracked = 0;
  int partially_tracked = 0;
  int mostly_lost = 0;
  int id_switches = 0;
  int id_count = 0;  // distinct predicted identities
  std::int64_t true_positives = 0;
  std::int64_t false_negatives = 0;
  std::int64_t false_positives = 0;
  std::int64_t gt_total = 0;
  // |id_count - gt_tracks| / gt_tracks
  std::optional<double> counting_error;
};

MotReport EvaluateMot(const MotSequence& gt, const MotSequence& pred,
                      double iou_min = 0.5);

// Majority gt identity of every predicted identity over matched frames.
std::map<int, int> MapPredictedIds(const MotSequence& gt,
                                   const MotSequence& pred,
                                   double iou_min = 0.5);

}  // namespace possense::evaluation

#endif  // POSSENSE_EVALUATION_MOT_METRICS_H_
