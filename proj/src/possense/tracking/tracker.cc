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

#include "possense/tracking/tracker.h"

#include <algorithm>
#include <set>
#include <string>

#include "possense/model/errors.h"
#include "possense/tracking/hungarian.h"

namespace possense::tracking {

void TrackerConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfig, what);
  };
  if (!(gates.chi2 > 0.0)) fail("tracking.chi2_gate must be > 0");
  if (!(gates.appearance > 0.0)) fail("tracking.app_gate must be > 0");
  if (lambda_mix < 0.0 || lambda_mix > 1.0) {
    fail("tracking.lambda_mix must be in [0, 1]");
  }
  if (iou_min < 0.0 || iou_min > 1.0) fail("tracking.iou_min must be in [0, 1]");
  if (n_init < 1) fail("tracking.n_init must be >= 1");
  if (max_age < 0) fail("tracking.max_age must be >= 0");
  if (gallery_size < 1) fail("tracking.gallery_size must be >= 1");
}

ClassLabel Track::majority_class() const {
  const auto it = std::max_element(class_votes.begin(), class_votes.end());
  return static_cast<ClassLabel>(it - class_votes.begin());
}

Track KalmanPredict(const Track& track, const FrameClock& clock,
                    const KalmanModel& model) {
  Track out = track;
  model.Predict(out.distribution, clock.n_skip());
  out.age += clock.n_skip();
  out.time_since_update += clock.n_skip();
  return out;
}

Track KalmanUpdate(const Track& track, const Detection& det,
                   const KalmanModel& model) {
  Track out = track;
  model.Update(out.distribution, MeasurementFromBox(det.bbox));
  out.hits += 1;
  out.time_since_update = 0;
  out.class_votes[static_cast<int>(det.class_label)] += 1;
  return out;
}

Tracker::Tracker(const TrackerConfig& config, const FrameClock& clock)
    : config_(config), clock_(clock), model_(config.noise) {
  config_.Validate();
}

TrackSnapshot Tracker::Snapshot(const Track& track, const Detection& det,
                                int frame) const {
  TrackSnapshot s;
  s.track_id = track.track_id;
  s.frame_index = frame;
  s.state = track.state();
  s.box = s.state.ToBox();
  s.confidence = det.confidence;
  s.class_label = det.class_label;
  s.contour = det.contour;
  return s;
}

std::vector<TrackSnapshot> Tracker::Step(const FrameDetections& frame) {
  if (frame.frame_index <= last_frame_) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame index regression: " + std::to_string(frame.frame_index) +
                    " after " + std::to_string(last_frame_));
  }
  std::vector<const Detection*> dets;
  for (const auto& d : frame.detections) {
    if (d.frame_index != frame.frame_index) {
      throw Error(ErrorCode::kInvalidArgument,
                  "detection frame index does not match its frame bucket");
    }
    if (config_.persons_only && !ClassIsPerson(d.class_label)) continue;
    dets.push_back(&d);
  }
  last_frame_ = frame.frame_index;

  for (auto& t : tracks_) t = KalmanPredict(t, clock_, model_);

  const int n_tracks = static_cast<int>(tracks_.size());
  std::vector<int> det_to_track(dets.size(), -1);
  std::vector<char> track_matched(n_tracks, false);

  // Projections are shared by every cost evaluation in this frame.
  std::vector<Projection> proj;
  proj.reserve(n_tracks);
  for (const auto& t : tracks_) proj.push_back(model_.Project(t.distribution));

  auto unmatched_dets = [&] {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(dets.size()); ++j) {
      if (det_to_track[j] < 0) out.push_back(j);
    }
    return out;
  };

  // Matching cascade over confirmed tracks, most recently updated first.
  std::set<int> levels;
  for (const auto& t : tracks_) {
    if (t.status == TrackStatus::kConfirmed) levels.insert(t.time_since_update);
  }
  for (int level : levels) {
    const auto free_dets = unmatched_dets();
    if (free_dets.empty()) break;
    std::vector<int> level_tracks;
    for (int i = 0; i < n_tracks; ++i) {
      if (tracks_[i].status == TrackStatus::kConfirmed &&
          tracks_[i].time_since_update == level) {
        level_tracks.push_back(i);
      }
    }
    Eigen::MatrixXd cost(level_tracks.size(), free_dets.size());
    for (std::size_t r = 0; r < level_tracks.size(); ++r) {
      const Track& t = tracks_[level_tracks[r]];
      for (std::size_t c = 0; c < free_dets.size(); ++c) {
        const Detection& d = *dets[free_dets[c]];
        const double d_mot = MotionDistance(proj[level_tracks[r]], d.bbox);
        const auto d_app = AppearanceDistance(t.gallery, d.appearance);
        cost(r, c) =
            CombinedCost(d_mot, d_app, config_.lambda_mix, config_.gates).d_comb;
      }
    }
    const Assignment a = HungarianAssign(cost);
    for (const auto& [r, c] : a.matches) {
      det_to_track[free_dets[c]] = level_tracks[r];
      track_matched[level_tracks[r]] = true;
    }
  }

  // IoU association for everything left over.
  {
    const auto free_dets = unmatched_dets();
    std::vector<int> free_tracks;
    for (int i = 0; i < n_tracks; ++i) {
      if (!track_matched[i]) free_tracks.push_back(i);
    }
    if (!free_dets.empty() && !free_tracks.empty()) {
      Eigen::MatrixXd cost(free_tracks.size(), free_dets.size());
      for (std::size_t r = 0; r < free_tracks.size(); ++r) {
        const BBox predicted = tracks_[free_tracks[r]].box();
        for (std::size_t c = 0; c < free_dets.size(); ++c) {
          const double iou = Iou(predicted, dets[free_dets[c]]->bbox);
          cost(r, c) = iou >= config_.iou_min && iou > 0.0 ? 1.0 - iou
                                                           : kInfeasibleCost;
        }
      }
      const Assignment a = HungarianAssign(cost);
      for (const auto& [r, c] : a.matches) {
        det_to_track[free_dets[c]] = free_tracks[r];
        track_matched[free_tracks[r]] = true;
      }
    }
  }

  for (int j = 0; j < static_cast<int>(dets.size()); ++j) {
    const int i = det_to_track[j];
    if (i < 0) continue;
    Track& t = tracks_[i];
    t = KalmanUpdate(t, *dets[j], model_);
    if (dets[j]->appearance) {
      t.gallery.push_back(*dets[j]->appearance);
      while (static_cast<int>(t.gallery.size()) > config_.gallery_size) {
        t.gallery.pop_front();
      }
    }
    if (t.status == TrackStatus::kTentative && t.hits >= config_.n_init) {
      t.status = TrackStatus::kConfirmed;
    }
    History& h = history_[t.track_id];
    h.confirmed = h.confirmed || t.status == TrackStatus::kConfirmed;
    h.observations.push_back(Snapshot(t, *dets[j], frame.frame_index));
  }
  for (int i = 0; i < n_tracks; ++i) {
    if (track_matched[i]) continue;
    Track& t = tracks_[i];
    if (t.status == TrackStatus::kTentative ||
        t.time_since_update > config_.max_age) {
      t.status = TrackStatus::kDeleted;
    }
  }

  for (int j = 0; j < static_cast<int>(dets.size()); ++j) {
    if (det_to_track[j] >= 0) continue;
    const Detection& d = *dets[j];
    Track t;
    t.track_id = next_id_++;
    t.distribution = model_.Initiate(MeasurementFromBox(d.bbox));
    t.hits = 1;
    t.age = 1;
    t.class_votes[static_cast<int>(d.class_label)] = 1;
    if (d.appearance) t.gallery.push_back(*d.appearance);
    t.status = config_.n_init <= 1 ? TrackStatus::kConfirmed
                                   : TrackStatus::kTentative;
    History& h = history_[t.track_id];
    h.confirmed = t.status == TrackStatus::kConfirmed;
    h.observations.push_back(Snapshot(t, d, frame.frame_index));
    tracks_.push_back(std::move(t));
  }

  std::erase_if(tracks_, [](const Track& t) {
    return t.status == TrackStatus::kDeleted;
  });

  std::vector<TrackSnapshot> out;
  for (const auto& t : tracks_) {
    if (t.status != TrackStatus::kConfirmed || t.time_since_update != 0) {
      continue;
    }
    out.push_back(history_.at(t.track_id).observations.back());
  }
  return out;
}

std::vector<Tracklet> Tracker::ConfirmedTracklets() const {
  std::vector<Tracklet> out;
  for (const auto& [id, h] : history_) {
    if (!h.confirmed) continue;
    Tracklet t;
    t.track_id = id;
    t.observations = h.observations;
    std::array<int, 7> votes{};
    for (const auto& o : h.observations) {
      votes[static_cast<int>(o.class_label)] += 1;
    }
    t.class_label = static_cast<ClassLabel>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Tracklet> FilterShortTracklets(std::vector<Tracklet> tracklets,
                                           int min_len) {
  if (min_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_len must be >= 1");
  }
  std::erase_if(tracklets, [min_len](const Tracklet& t) {
    return static_cast<int>(t.observations.size()) < min_len;
  });
  return tracklets;
}

std::vector<Tracklet> RunTracker(const std::vector<FrameDetections>& frames,
                                 const TrackerConfig& config,
                                 const FrameClock& clock) {
  Tracker tracker(config, clock);
  if (frames.empty()) return {};
  const int last = frames.back().frame_index;
  std::size_t cursor = 0;
  for (int f = 1; f <= last; f += clock.n_skip()) {
    while (cursor < frames.size() && frames[cursor].frame_index < f) ++cursor;
    if (cursor < frames.size() && frames[cursor].frame_index == f) {
      tracker.Step(frames[cursor]);
    } else {
      tracker.Step(FrameDetections{f, {}});
    }
  }
  return tracker.ConfirmedTracklets();
}

}  // namespace possense::tracking
