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

#include "possense/monitoring/mask.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense::monitoring {

std::string MaskLabelName(MaskLabel l) {
  switch (l) {
    case MaskLabel::kMask: return "mask";
    case MaskLabel::kNoMask: return "no_mask";
    case MaskLabel::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<MaskLabel> ParseMaskLabel(const std::string& text) {
  for (MaskLabel l : {MaskLabel::kMask, MaskLabel::kNoMask, MaskLabel::kUnknown}) {
    if (MaskLabelName(l) == text) return l;
  }
  return std::nullopt;
}

void MaskParams::Validate() const {
  if (!(min_px_height >= 0.0)) {
    throw Error(ErrorCode::kConfig, "monitoring.min_px_height must be >= 0");
  }
}

std::optional<MaskObservation> MaskCrop(int track_id, int frame_index,
                                        const BBox& box, double dy_c,
                                        const MaskParams& params) {
  const bool heading = dy_c > 0.0 && box.height >= params.min_px_height;
  if (!heading) return std::nullopt;
  MaskObservation o;
  o.track_id = track_id;
  o.frame_index = frame_index;
  o.crop = {box.left, box.top, box.width, std::ceil(box.height / 6.0)};
  o.heading_toward_camera = true;
  return o;
}

std::vector<MaskObservation> CollectMaskObservations(
    const TrajectorySet& tracks, const MaskParams& params) {
  params.Validate();
  std::vector<MaskObservation> out;
  for (const auto& [id, samples] : tracks) {
    for (const auto& s : samples) {
      if (!ClassIsPerson(s.class_label)) continue;
      auto o = MaskCrop(id, s.frame_index, s.box, s.vy_px, params);
      if (!o) continue;
      o->time_s = s.time_s;
      out.push_back(*o);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MaskObservation& a, const MaskObservation& b) {
                     if (a.frame_index != b.frame_index) {
                       return a.frame_index < b.frame_index;
                     }
                     return a.track_id < b.track_id;
                   });
  return out;
}

void WriteClassifierRequests(std::ostream& out,
                             const std::vector<MaskObservation>& obs) {
  for (const auto& o : obs) {
    out << o.frame_index << ',' << o.track_id << ','
        << FormatDouble(o.crop.left) << ',' << FormatDouble(o.crop.top) << ','
        << FormatDouble(o.crop.width) << ',' << FormatDouble(o.crop.height)
        << '\n';
  }
}

LabelTable ReadClassifierLabels(std::istream& in) {
  LabelTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto c1 = t.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : t.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw ParseError("classifier line needs track,frame,label", line_no);
    }
    const int track = static_cast<int>(ParseInt(t.substr(0, c1), line_no));
    const int frame =
        static_cast<int>(ParseInt(t.substr(c1 + 1, c2 - c1 - 1), line_no));
    const std::string name(Trim(t.substr(c2 + 1)));
    const auto label = ParseMaskLabel(name);
    if (!label) {
      throw ParseError("unknown mask label '" + name + "'", line_no);
    }
    table[{track, frame}] = *label;
  }
  return table;
}

void ApplyLabels(std::vector<MaskObservation>& obs, const LabelTable& labels) {
  for (auto& o : obs) {
    const auto it = labels.find({o.track_id, o.frame_index});
    o.label = it == labels.end() ? MaskLabel::kUnknown : it->second;
  }
}

LabelTable RunClassifier(const std::string& command,
                         const std::vector<MaskObservation>& obs) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto request =
      dir / ("possense_mask_" + std::to_string(::getpid()) + ".csv");
  {
    std::ofstream out(request);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + request.string());
    WriteClassifierRequests(out, obs);
  }
  const std::string full = command + " '" + request.string() + "'";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(full.c_str(), "r"),
                                             ::pclose);
  if (!pipe) {
    std::filesystem::remove(request);
    throw Error(ErrorCode::kIo, "cannot start classifier: " + command);
  }
  std::string response;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) {
    response.append(buf, n);
  }
  const int status = ::pclose(pipe.release());
  std::filesystem::remove(request);
  if (status != 0) {
    throw Error(ErrorCode::kIo, "classifier exited with status " +
                                    std::to_string(status));
  }
  std::istringstream in(response);
  return ReadClassifierLabels(in);
}

}  // namespace possense::monitoring
