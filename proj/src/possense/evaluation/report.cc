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

#include "possense/evaluation/report.h"

#include <cstdio>
#include <ostream>

#include "possense/model/format.h"

namespace possense::evaluation {

namespace {

std::string Csv(const std::optional<double>& fraction) {
  return fraction ? FormatDouble(100.0 * *fraction) : "";
}

}  // namespace

std::string Percent(const std::optional<double>& fraction) {
  return fraction ? FormatFixed(100.0 * *fraction, 1) : "-";
}

void WriteMotCsv(std::ostream& out, const MotReport& r) {
  out << "MOTA,MOTP,Prcn,Rcll,GT,MT,PT,ML,IDs,ID_count,TP,FN,FP,GT_boxes,"
         "counting_error\n";
  out << Csv(r.mota) << ',' << Csv(r.motp) << ',' << Csv(r.precision) << ','
      << Csv(r.recall) << ',' << r.gt_tracks << ',' << r.mostly_tracked << ','
      << r.partially_tracked << ',' << r.mostly_lost << ',' << r.id_switches
      << ',' << r.id_count << ',' << r.true_positives << ','
      << r.false_negatives << ',' << r.false_positives << ',' << r.gt_total
      << ',' << Csv(r.counting_error) << '\n';
}

void WriteMotTable(std::ostream& out, const MotReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%7s %7s %7s %7s %5s %5s %5s %5s %5s %5s\n",
                "MOTA", "MOTP", "Prcn", "Rcll", "GT", "MT", "PT", "ML", "IDs",
                "IDCt");
  out << buf;
  std::snprintf(buf, sizeof buf, "%7s %7s %7s %7s %5d %5d %5d %5d %5d %5d\n",
                Percent(r.mota).c_str(), Percent(r.motp).c_str(),
                Percent(r.precision).c_str(), Percent(r.recall).c_str(),
                r.gt_tracks, r.mostly_tracked, r.partially_tracked,
                r.mostly_lost, r.id_switches, r.id_count);
  out << buf;
}

void WriteGroupCsv(std::ostream& out, const GroupReport& r) {
  out << "precision,recall,f1,true_pairs,pred_pairs,gt_pairs,windows,"
         "window_size_s\n";
  out << Csv(r.precision) << ',' << Csv(r.recall) << ',' << Csv(r.f1) << ','
      << r.true_pairs << ',' << r.pred_pairs << ',' << r.gt_pairs << ','
      << r.windows << ',' << FormatDouble(r.window_size_s) << '\n';
}

void WriteGroupTable(std::ostream& out, const GroupReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%9s %9s %9s %8s\n", "Precision", "Recall",
                "F1", "Window");
  out << buf;
  std::snprintf(buf, sizeof buf, "%9s %9s %9s %7ss\n",
                Percent(r.precision).c_str(), Percent(r.recall).c_str(),
                Percent(r.f1).c_str(), FormatDouble(r.window_size_s).c_str());
  out << buf;
}

}  // namespace possense::evaluation
