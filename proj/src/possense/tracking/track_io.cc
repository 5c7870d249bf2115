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

#include "possense/tracking/track_io.h"

#include <algorithm>
#include <ostream>

#include "possense/model/detection_io.h"

namespace possense::tracking {

void WriteTrackFile(std::ostream& out, const std::vector<Tracklet>& tracklets) {
  std::vector<const TrackSnapshot*> rows;
  for (const auto& t : tracklets) {
    for (const auto& o : t.observations) rows.push_back(&o);
  }
  std::sort(rows.begin(), rows.end(),
            [](const TrackSnapshot* a, const TrackSnapshot* b) {
              if (a->frame_index != b->frame_index) {
                return a->frame_index < b->frame_index;
              }
              return a->track_id < b->track_id;
            });
  for (const auto* r : rows) {
    out << FormatMotLine(r->frame_index, r->track_id, r->box, r->confidence)
        << '\n';
  }
}

}  // namespace possense::tracking
