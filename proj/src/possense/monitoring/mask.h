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

#ifndef POSSENSE_MONITORING_MASK_H_
#define POSSENSE_MONITORING_MASK_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "possense/model/trajectory.h"
#include "possense/model/types.h"

namespace possense::monitoring {

enum class MaskLabel { kMask, kNoMask, kUnknown };
std::string MaskLabelName(MaskLabel l);
std::optional<MaskLabel> ParseMaskLabel(const std::string& text);

struct MaskParams {
  double min_px_height = 60.0;
  void Validate() const;
};

struct MaskObservation {
  int track_id = 0;
  int frame_index = 0;
  double time_s = 0.0;
  BBox crop;
  bool heading_toward_camera = false;
  MaskLabel label = MaskLabel::kUnknown;
};

// Head crop (top sixth of the box) for a person moving down-frame and tall
// enough to classify; nullopt otherwise.
std::optional<MaskObservation> MaskCrop(int track_id, int frame_index,
                                        const BBox& box, double dy_c,
                                        const MaskParams& params);

std::vector<MaskObservation> CollectMaskObservations(
    const TrajectorySet& tracks, const MaskParams& params);

// Request lines "frame,track,left,top,width,height".
void WriteClassifierRequests(std::ostream& out,
                             const std::vector<MaskObservation>& obs);

// Response lines "track,frame,label"; unknown labels are an error.
using LabelTable = std::map<std::pair<int, int>, MaskLabel>;
LabelTable ReadClassifierLabels(std::istream& in);

// Observations without a response keep the unknown label.
void ApplyLabels(std::vector<MaskObservation>& obs, const LabelTable& labels);

// Runs `command` with the request file path appended as its last argument
// and parses its standard output.
LabelTable RunClassifier(const std::string& command,
                         const std::vector<MaskObservation>& obs);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_MASK_H_
