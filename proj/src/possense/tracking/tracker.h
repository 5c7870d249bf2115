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

#ifndef POSSENSE_TRACKING_TRACKER_H_
#define POSSENSE_TRACKING_TRACKER_H_

#include <array>
#include <deque>
#include <map>
#include <vector>

#include "possense/model/types.h"
#include "possense/tracking/distances.h"
#include "possense/tracking/kalman_filter.h"

namespace possense::tracking {

struct TrackerConfig {
  Gates gates;
  // Weight of d_mot in the combined cost; 0 lets appearance drive the cost
  // while motion only gates.
  double lambda_mix = 0.0;
  // Minimum IoU for the fallback IoU association.
  double iou_min = 0.3;
  int n_init = 3;
  // Frames without a match before a confirmed track is deleted.
  int max_age = 30;
  int gallery_size = 100;
  NoiseWeights noise;
  // Skip non_person detections.
  bool persons_only = true;

  void Validate() const;
};

enum class TrackStatus { kTentative, kConfirmed, kDeleted };

struct Track {
  int track_id = 0;
  Gaussian8 distribution;
  std::deque<Appearance> gallery;
  TrackStatus status = TrackStatus::kTentative;
  int age = 0;
  int hits = 0;
  int time_since_update = 0;
  std::array<int, 7> class_votes{};

  TrackState state() const { return TrackState::FromVector(distribution.mean); }
  BBox box() const { return state().ToBox(); }
  ClassLabel majority_class() const;
};

// Advances the track by clock.n_skip() single-frame predictions.
Track KalmanPredict(const Track& track, const FrameClock& clock,
                    const KalmanModel& model);
// Kalman update against the detection box; resets time_since_update.
Track KalmanUpdate(const Track& track, const Detection& det,
                   const KalmanModel& model);

struct TrackSnapshot {
  int track_id = 0;
  int frame_index = 0;
  BBox box;
  double confidence = 0.0;
  TrackState state;
  ClassLabel class_label = ClassLabel::kPedestrian;
  std::optional<std::vector<PixelPoint>> contour;
};

// Every matched observation of one identity.
struct Tracklet {
  int track_id = 0;
  ClassLabel class_label = ClassLabel::kPedestrian;
  std::vector<TrackSnapshot> observations;
};

class Tracker {
 public:
  Tracker(const TrackerConfig& config, const FrameClock& clock);

  // Processes one frame. Returns snapshots of confirmed tracks that were
  // matched in this frame. Throws on frame-index regression.
  std::vector<TrackSnapshot> Step(const FrameDetections& frame);

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }
  int last_frame() const { return last_frame_; }

  // Observations of every identity that ever reached confirmed status,
  // including the tentative frames that preceded confirmation. Ordered by
  // track id.
  std::vector<Tracklet> ConfirmedTracklets() const;

 private:
  struct History {
    bool confirmed = false;
    std::vector<TrackSnapshot> observations;
  };

  TrackSnapshot Snapshot(const Track& track, const Detection& det,
                         int frame) const;

  TrackerConfig config_;
  FrameClock clock_;
  KalmanModel model_;
  std::vector<Track> tracks_;
  std::map<int, History> history_;
  int next_id_ = 1;
  int last_frame_ = 0;
};

// Drops tracklets observed on fewer than `min_len` frames.
std::vector<Tracklet> FilterShortTracklets(std::vector<Tracklet> tracklets,
                                           int min_len);

// Runs the tracker over a whole detection stream, feeding every
// n_skip-th frame from the first one (frames without detections included).
std::vector<Tracklet> RunTracker(const std::vector<FrameDetections>& frames,
                                 const TrackerConfig& config,
                                 const FrameClock& clock);

}  // namespace possense::tracking

#endif  // POSSENSE_TRACKING_TRACKER_H_
