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

#include "possense/synth/perturb.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "possense/model/errors.h"
#include "possense/synth/rng.h"

namespace possense::synth {

namespace {

// id -> frames where it appears, ascending.
std::map<int, std::vector<int>> Appearances(const evaluation::MotSequence& gt) {
  std::map<int, std::vector<int>> out;
  for (const auto& [f, recs] : gt) {
    for (const auto& r : recs) out[r.id].push_back(f);
  }
  return out;
}

}  // namespace

int CountIdBoundaries(const evaluation::MotSequence& gt) {
  int n = 0;
  for (const auto& [id, frames] : Appearances(gt)) {
    n += static_cast<int>(frames.size()) - 1;
  }
  return n;
}

evaluation::MotSequence PerturbIds(const evaluation::MotSequence& gt, int k,
                                   std::uint64_t seed) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  const auto apps = Appearances(gt);
  // Boundary = (id, index of the first frame after the cut).
  std::vector<std::pair<int, int>> boundaries;
  for (const auto& [id, frames] : apps) {
    for (std::size_t i = 1; i < frames.size(); ++i) {
      boundaries.emplace_back(id, static_cast<int>(i));
    }
  }
  if (k > static_cast<int>(boundaries.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "k=" + std::to_string(k) + " exceeds the " +
                    std::to_string(boundaries.size()) +
                    " available id boundaries");
  }
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    const auto j = i + rng.Below(boundaries.size() - i);
    std::swap(boundaries[i], boundaries[j]);
  }
  std::map<int, std::set<int>> cuts;  // id -> frames where a new id starts
  for (int i = 0; i < k; ++i) {
    const auto& [id, idx] = boundaries[i];
    cuts[id].insert(apps.at(id)[idx]);
  }
  int next_id = 0;
  for (const auto& [id, frames] : apps) next_id = std::max(next_id, id);
  ++next_id;
  // Current label per original id, advanced at each cut in frame order.
  std::map<int, int> label;
  evaluation::MotSequence out;
  for (const auto& [f, recs] : gt) {
    for (auto r : recs) {
      auto [it, fresh] = label.try_emplace(r.id, r.id);
      const auto c = cuts.find(r.id);
      if (c != cuts.end() && c->second.count(f)) it->second = next_id++;
      r.id = it->second;
      out[f].push_back(r);
    }
  }
  return out;
}

}  // namespace possense::synth
