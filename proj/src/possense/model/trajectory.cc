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

#include "possense/model/trajectory.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense {

namespace {

constexpr const char* kHeader =
    "frame,track_id,time_s,x_m,y_m,left,top,width,height,conf,vy_px,class,"
    "contour";

std::string FormatContour(const std::optional<std::vector<PixelPoint>>& c) {
  if (!c) return "";
  std::string s;
  for (std::size_t i = 0; i < c->size(); ++i) {
    if (i > 0) s += ';';
    s += FormatDouble((*c)[i].u);
    s += ' ';
    s += FormatDouble((*c)[i].v);
  }
  return s;
}

std::optional<std::vector<PixelPoint>> ParseContour(std::string_view text,
                                                    int line) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  std::vector<PixelPoint> pts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto item = Trim(text.substr(start, semi - start));
    const auto space = item.find(' ');
    if (space == std::string_view::npos) {
      throw ParseError("contour vertex needs 'u v'", line);
    }
    pts.push_back({ParseDouble(item.substr(0, space), line),
                   ParseDouble(item.substr(space + 1), line)});
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return pts;
}

}  // namespace

TrajectorySet GroupByTrack(const std::vector<TrajectorySample>& samples) {
  TrajectorySet set;
  for (const auto& s : samples) set[s.track_id].push_back(s);
  for (auto& [id, list] : set) {
    std::stable_sort(list.begin(), list.end(),
                     [](const TrajectorySample& a, const TrajectorySample& b) {
                       return a.time_s < b.time_s;
                     });
  }
  return set;
}

void WriteTrajectories(std::ostream& out, const TrajectorySet& set) {
  std::vector<const TrajectorySample*> rows;
  for (const auto& [id, list] : set) {
    for (const auto& s : list) rows.push_back(&s);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TrajectorySample* a, const TrajectorySample* b) {
                     if (a->frame_index != b->frame_index) {
                       return a->frame_index < b->frame_index;
                     }
                     return a->track_id < b->track_id;
                   });
  out << kHeader << '\n';
  for (const auto* s : rows) {
    out << s->frame_index << ',' << s->track_id << ','
        << FormatDouble(s->time_s) << ',' << FormatDouble(s->x) << ','
        << FormatDouble(s->y) << ',' << FormatDouble(s->box.left) << ','
        << FormatDouble(s->box.top) << ',' << FormatDouble(s->box.width) << ','
        << FormatDouble(s->box.height) << ',' << FormatDouble(s->confidence)
        << ',' << FormatDouble(s->vy_px) << ','
        << ClassLabelName(s->class_label) << ',' << FormatContour(s->contour)
        << '\n';
  }
}

TrajectorySet ReadTrajectories(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<TrajectorySample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.starts_with("frame,")) continue;
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = t.find(',', start);
      f.push_back(t.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 13) {
      throw ParseError("trajectory row needs 13 fields", line_no);
    }
    TrajectorySample s;
    s.frame_index = static_cast<int>(ParseInt(f[0], line_no));
    s.track_id = static_cast<int>(ParseInt(f[1], line_no));
    s.time_s = ParseDouble(f[2], line_no);
    s.x = ParseDouble(f[3], line_no);
    s.y = ParseDouble(f[4], line_no);
    s.box = {ParseDouble(f[5], line_no), ParseDouble(f[6], line_no),
             ParseDouble(f[7], line_no), ParseDouble(f[8], line_no)};
    s.confidence = ParseDouble(f[9], line_no);
    s.vy_px = ParseDouble(f[10], line_no);
    const auto label = ParseClassLabel(Trim(f[11]));
    s.class_label = label.value_or(ClassLabel::kPeopleOther);
    s.contour = ParseContour(f[12], line_no);
    samples.push_back(std::move(s));
  }
  return GroupByTrack(samples);
}

TrajectorySet ReadTrajectoryFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadTrajectories(in);
}

}  // namespace possense
