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

#include "possense/evaluation/mot_metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <Eigen/Core>

#include "possense/model/detection_io.h"
#include "possense/model/errors.h"
#include "possense/model/format.h"
#include "possense/tracking/distances.h"
#include "possense/tracking/hungarian.h"

namespace possense::evaluation {

namespace {

std::vector<std::string_view> SplitComma(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto c = s.find(',', start);
    out.push_back(Trim(s.substr(start, c - start)));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

// Walks every frame of both sequences, calling fn(frame, match).
template <typename Fn>
void ForEachMatchedFrame(const MotSequence& gt, const MotSequence& pred,
                         double iou_min, Fn&& fn) {
  std::set<int> frames;
  for (const auto& [f, r] : gt) frames.insert(f);
  for (const auto& [f, r] : pred) frames.insert(f);
  const std::vector<MotRecord> none;
  std::map<int, int> previous;
  for (const int f : frames) {
    const auto ig = gt.find(f);
    const auto ip = pred.find(f);
    const auto& g = ig == gt.end() ? none : ig->second;
    const auto& p = ip == pred.end() ? none : ip->second;
    const FrameMatch m = MatchFrame(g, p, iou_min, previous);
    for (const auto& [gid, pid] : m.matches) previous[gid] = pid;
    fn(f, g, p, m);
  }
}

}  // namespace

MotSequence ReadMot(std::istream& in, bool skip_zero_flag) {
  MotSequence seq;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto f = SplitComma(t);
    if (f.size() < 6) throw ParseError("MOT row needs >= 6 fields", line_no);
    MotRecord r;
    r.frame_index = static_cast<int>(ParseInt(f[0], line_no));
    r.id = static_cast<int>(ParseInt(f[1], line_no));
    r.box = {ParseDouble(f[2], line_no), ParseDouble(f[3], line_no),
             ParseDouble(f[4], line_no), ParseDouble(f[5], line_no)};
    if (f.size() > 6) r.confidence = ParseDouble(f[6], line_no);
    if (r.frame_index < 1) throw ParseError("frame index must be >= 1", line_no);
    if (!(r.box.width > 0.0) || !(r.box.height > 0.0)) {
      throw ParseError("bbox width and height must be > 0", line_no);
    }
    if (skip_zero_flag && f.size() > 6 && r.confidence == 0.0) continue;
    seq[r.frame_index].push_back(r);
  }
  for (auto& [frame, recs] : seq) {
    std::set<int> ids;
    for (const auto& r : recs) {
      if (!ids.insert(r.id).second) {
        throw Error(ErrorCode::kParse, "id " + std::to_string(r.id) +
                                           " repeated in frame " +
                                           std::to_string(frame));
      }
    }
  }
  return seq;
}

MotSequence ReadMotFile(const std::filesystem::path& path,
                        bool skip_zero_flag) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadMot(in, skip_zero_flag);
}

void WriteMot(std::ostream& out, const MotSequence& seq) {
  for (const auto& [f, recs] : seq) {
    std::vector<MotRecord> sorted = recs;
    std::sort(sorted.begin(), sorted.end(),
              [](const MotRecord& a, const MotRecord& b) { return a.id < b.id; });
    for (const auto& r : sorted) {
      out << FormatMotLine(r.frame_index, r.id, r.box, r.confidence) << '\n';
    }
  }
}

FrameMatch MatchFrame(std::span<const MotRecord> gt,
                      std::span<const MotRecord> pred, double iou_min,
                      const std::map<int, int>& previous) {
  FrameMatch out;
  std::vector<bool> gt_used(gt.size(), false), pred_used(pred.size(), false);
  for (std::size_t g = 0; g < gt.size(); ++g) {
    const auto it = previous.find(gt[g].id);
    if (it == previous.end()) continue;
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (pred_used[p] || pred[p].id != it->second) continue;
      const double iou = tracking::Iou(gt[g].box, pred[p].box);
      if (iou >= iou_min) {
        gt_used[g] = pred_used[p] = true;
        out.matches.emplace_back(gt[g].id, pred[p].id);
        out.ious.push_back(iou);
      }
      break;
    }
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_used[g]) rows.push_back(g);
  }
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (!pred_used[p]) cols.push_back(p);
  }
  if (!rows.empty() && !cols.empty()) {
    Eigen::MatrixXd cost(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const double iou = tracking::Iou(gt[rows[r]].box, pred[cols[c]].box);
        cost(r, c) = iou >= iou_min ? 1.0 - iou : tracking::kInfeasibleCost;
      }
    }
    const auto assignment = tracking::HungarianAssign(cost);
    for (const auto& [r, c] : assignment.matches) {
      const auto& g = gt[rows[r]];
      const auto& p = pred[cols[c]];
      gt_used[rows[r]] = pred_used[cols[c]] = true;
      out.matches.emplace_back(g.id, p.id);
      out.ious.push_back(tracking::Iou(g.box, p.box));
    }
  }
  out.false_negatives =
      static_cast<int>(std::count(gt_used.begin(), gt_used.end(), false));
  out.false_positives =
      static_cast<int>(std::count(pred_used.begin(), pred_used.end(), false));
  return out;
}

double Mota(std::int64_t fn, std::int64_t fp, std::int64_t ids,
            std::int64_t gt) {
  if (gt <= 0) {
    throw Error(ErrorCode::kUndefined, "MOTA undefined without ground truth");
  }
  return 1.0 - static_cast<double>(fn + fp + ids) / static_cast<double>(gt);
}

double Motp(std::span<const double> ious) {
  if (ious.empty()) {
    throw Error(ErrorCode::kUndefined, "MOTP undefined without matches");
  }
  double sum = 0.0;
  for (double v : ious) sum += v;
  return sum / static_cast<double>(ious.size());
}

Coverage TrackCoverage(
    const std::map<int, std::pair<int, int>>& matched_and_total) {
  Coverage c;
  for (const auto& [id, mt] : matched_and_total) {
    const double ratio =
        mt.second > 0 ? static_cast<double>(mt.first) / mt.second : 0.0;
    if (ratio >= 0.8) {
      ++c.mostly_tracked;
    } else if (ratio <= 0.2) {
      ++c.mostly_lost;
    } else {
      ++c.partially_tracked;
    }
  }
  return c;
}

int CountIdSwitches(
    const std::vector<std::vector<std::pair<int, int>>>& per_frame) {
  std::map<int, int> last;
  int switches = 0;
  for (const auto& frame : per_frame) {
    for (const auto& [gid, pid] : frame) {
      const auto it = last.find(gid);
      if (it != last.end() && it->second != pid) ++switches;
      last[gid] = pid;
    }
  }
  return switches;
}

MotReport EvaluateMot(const MotSequence& gt, const MotSequence& pred,
                      double iou_min) {
  MotReport rep;
  std::map<int, std::pair<int, int>> coverage;
  std::set<int> pred_ids;
  std::vector<std::vector<std::pair<int, int>>> correspondences;
  std::vector<double> ious;
  for (const auto& [f, recs] : gt) {
    for (const auto& r : recs) ++coverage[r.id].second;
  }
  for (const auto& [f, recs] : pred) {
    for (const auto& r : recs) pred_ids.insert(r.id);
  }
  ForEachMatchedFrame(gt, pred, iou_min,
                      [&](int, const std::vector<MotRecord>& g,
                          const std::vector<MotRecord>&, const FrameMatch& m) {
                        rep.gt_total += static_cast<std::int64_t>(g.size());
                        rep.false_negatives += m.false_negatives;
                        rep.false_positives += m.false_positives;
                        rep.true_positives +=
                            static_cast<std::int64_t>(m.matches.size());
                        for (const auto& [gid, pid] : m.matches) {
                          ++coverage[gid].first;
                        }
                        ious.insert(ious.end(), m.ious.begin(), m.ious.end());
                        correspondences.push_back(m.matches);
                      });
  rep.id_switches = CountIdSwitches(correspondences);
  const Coverage c = TrackCoverage(coverage);
  rep.gt_tracks = static_cast<int>(coverage.size());
  rep.mostly_tracked = c.mostly_tracked;
  rep.partially_tracked = c.partially_tracked;
  rep.mostly_lost = c.mostly_lost;
  rep.id_count = static_cast<int>(pred_ids.size());
  if (rep.gt_total > 0) {
    rep.mota = Mota(rep.false_negatives, rep.false_positives, rep.id_switches,
                    rep.gt_total);
    rep.recall = static_cast<double>(rep.true_positives) / rep.gt_total;
  }
  if (!ious.empty()) rep.motp = Motp(ious);
  if (rep.true_positives + rep.false_positives > 0) {
    rep.precision = static_cast<double>(rep.true_positives) /
                    (rep.true_positives + rep.false_positives);
  }
  if (rep.gt_tracks > 0) {
    rep.counting_error =
        std::abs(static_cast<double>(rep.id_count - rep.gt_tracks)) /
        rep.gt_tracks;
  }
  return rep;
}

std::map<int, int> MapPredictedIds(const MotSequence& gt,
                                   const MotSequence& pred, double iou_min) {
  std::map<int, std::map<int, int>> votes;  // pred -> gt -> frames
  ForEachMatchedFrame(gt, pred, iou_min,
                      [&](int, const std::vector<MotRecord>&,
                          const std::vector<MotRecord>&, const FrameMatch& m) {
                        for (const auto& [gid, pid] : m.matches) {
                          ++votes[pid][gid];
                        }
                      });
  std::map<int, int> out;
  for (const auto& [pid, tally] : votes) {
    int best = -1, best_n = 0;
    for (const auto& [gid, n] : tally) {
      if (n > best_n) {
        best = gid;
        best_n = n;
      }
    }
    out[pid] = best;
  }
  return out;
}

}  // namespace possense::evaluation
