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

#ifndef POSSENSE_EVALUATION_GROUPING_METRICS_H_
#define POSSENSE_EVALUATION_GROUPING_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "possense/grouping/grouping_io.h"

namespace possense::evaluation {

struct GroupReport {
  std::optional<double> precision;  // absent without predicted pairs
  std::optional<double> recall;     // absent without true pairs
  std::optional<double> f1;
  std::int64_t true_pairs = 0;  // predicted pairs that are true
  std::int64_t pred_pairs = 0;
  std::int64_t gt_pairs = 0;
  double window_size_s = 0.0;
  int windows = 0;
};

using PairSet = std::set<std::pair<int, int>>;
// Unordered co-member pairs (a < b); singletons contribute none.
PairSet CoMemberPairs(const grouping::Groups& groups);

// Pairwise precision, recall and F1. Both partitions are first restricted to
// the ids they have in common.
GroupReport GroupingPrf(const grouping::Groups& gt,
                        const grouping::Groups& pred);

// Micro-pooled over windows present in both tables. When id_map is given,
// predicted ids are renamed through it and unmapped ids are dropped.
GroupReport EvaluateGroupings(const grouping::GroupingTable& gt,
                              const grouping::GroupingTable& pred,
                              const std::map<int, int>* id_map = nullptr);

}  // namespace possense::evaluation

#endif  // POSSENSE_EVALUATION_GROUPING_METRICS_H_
