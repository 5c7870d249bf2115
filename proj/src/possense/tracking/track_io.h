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

#ifndef POSSENSE_TRACKING_TRACK_IO_H_
#define POSSENSE_TRACKING_TRACK_IO_H_

#include <iosfwd>
#include <vector>

#include "possense/tracking/tracker.h"

namespace possense::tracking {

// MOT result lines "frame,id,left,top,width,height,conf,-1,-1,-1", ordered
// by frame then track id.
void WriteTrackFile(std::ostream& out, const std::vector<Tracklet>& tracklets);

}  // namespace possense::tracking

#endif  // POSSENSE_TRACKING_TRACK_IO_H_
