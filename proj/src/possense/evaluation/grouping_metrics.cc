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

#include "possense/evaluation/grouping_metrics.h"

#include <algorithm>
#include <iterator>

namespace possense::evaluation {

namespace {

std::set<int> Members(const grouping::Groups& groups) {
  std::set<int> ids;
  for (const auto& g : groups) ids.insert(g.begin(), g.end());
  return ids;
}

grouping::Groups Restrict(const grouping::Groups& groups,
                          const std::set<int>& keep) {
  grouping::Groups out;
  for (const auto& g : groups) {
    std::vector<int> kept;
    for (int id : g) {
      if (keep.count(id)) kept.push_back(id);
    }
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  return out;
}

void Finish(GroupReport& r) {
  r.precision.reset();
  r.recall.reset();
  r.f1.reset();
  if (r.pred_pairs > 0) {
    r.precision = static_cast<double>(r.true_pairs) / r.pred_pairs;
  }
  if (r.gt_pairs > 0) {
    r.recall = static_cast<double>(r.true_pairs) / r.gt_pairs;
  }
  if (r.precision && r.recall) {
    const double s = *r.precision + *r.recall;
    r.f1 = s > 0.0 ? 2.0 * *r.precision * *r.recall / s : 0.0;
  }
}

void Count(const grouping::Groups& gt, const grouping::Groups& pred,
           GroupReport& r) {
  std::set<int> common;
  const auto a = Members(gt);
  const auto b = Members(pred);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(common, common.end()));
  const PairSet gp = CoMemberPairs(Restrict(gt, common));
  const PairSet pp = CoMemberPairs(Restrict(pred, common));
  for (const auto& p : pp) {
    if (gp.count(p)) ++r.true_pairs;
  }
  r.pred_pairs += static_cast<std::int64_t>(pp.size());
  r.gt_pairs += static_cast<std::int64_t>(gp.size());
}

}  // namespace

PairSet CoMemberPairs(const grouping::Groups& groups) {
  PairSet pairs;
  for (const auto& g : groups) {
    for (std::size_t x = 0; x < g.size(); ++x) {
      for (std::size_t y = x + 1; y < g.size(); ++y) {
        if (g[x] == g[y]) continue;
        pairs.emplace(std::min(g[x], g[y]), std::max(g[x], g[y]));
      }
    }
  }
  return pairs;
}

GroupReport GroupingPrf(const grouping::Groups& gt,
                        const grouping::Groups& pred) {
  GroupReport r;
  Count(gt, pred, r);
  r.windows = 1;
  Finish(r);
  return r;
}

GroupReport EvaluateGroupings(const grouping::GroupingTable& gt,
                              const grouping::GroupingTable& pred,
                              const std::map<int, int>* id_map) {
  GroupReport r;
  for (const auto& [k, truth] : gt) {
    const auto it = pred.find(k);
    if (it == pred.end()) continue;
    grouping::Groups renamed = it->second;
    if (id_map) {
      renamed.clear();
      for (const auto& g : it->second) {
        std::vector<int> ids;
        for (int id : g) {
          const auto m = id_map->find(id);
          if (m != id_map->end() && m->second >= 0) ids.push_back(m->second);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty()) renamed.push_back(std::move(ids));
      }
    }
    Count(truth, renamed, r);
    ++r.windows;
  }
  Finish(r);
  return r;
}

}  // namespace possense::evaluation
