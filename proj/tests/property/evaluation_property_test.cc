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

#include <gtest/gtest.h>

#include "possense/cli/manifest.h"
#include "possense/evaluation/grouping_metrics.h"
#include "possense/evaluation/mot_metrics.h"
#include "possense/synth/generator.h"
#include "possense/synth/perturb.h"
#include "possense/synth/rng.h"
#include "support/fixtures.h"

namespace possense::evaluation {
namespace {

grouping::Groups RandomPartition(synth::Rng& rng, int n) {
  std::map<int, std::vector<int>> by_label;
  for (int id = 1; id <= n; ++id) {
    by_label[static_cast<int>(rng.Below(n))].push_back(id);
  }
  grouping::Groups out;
  for (auto& [l, g] : by_label) out.push_back(g);
  return out;
}

TEST(GroupingPrfProperty, SwappingRolesSwapsPrecisionAndRecall) {
  synth::Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(10));
    const auto a = RandomPartition(rng, n);
    const auto b = RandomPartition(rng, n);
    const auto ab = GroupingPrf(a, b);
    const auto ba = GroupingPrf(b, a);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    if (ab.f1 && ba.f1) {
      EXPECT_NEAR(*ab.f1, *ba.f1, 1e-15);
    }
    const auto self = GroupingPrf(a, a);
    if (self.precision) EXPECT_EQ(*self.precision, 1.0);
  }
}

MotSequence TruthOf(std::uint64_t seed) {
  const auto sc = possense::testing::TenWalkersScenario(seed, 0.0, 0.0);
  return synth::Generate(sc).gt;
}

TEST(MotProperty, MotaFallsAsSwitchesGrow) {
  const auto gt = TruthOf(7);
  double previous = 1.0;
  for (int k : {0, 2, 5, 10, 20}) {
    const auto r = EvaluateMot(gt, synth::PerturbIds(gt, k, 3));
    EXPECT_EQ(r.id_switches, k);
    EXPECT_LE(*r.mota, previous);
    previous = *r.mota;
  }
}

TEST(MotProperty, MotaFallsAsRecordsAreRemoved) {
  const auto gt = TruthOf(8);
  synth::Rng rng(1);
  MotSequence pred = gt;
  double previous = *EvaluateMot(gt, pred).mota;
  EXPECT_EQ(previous, 1.0);
  for (int round = 0; round < 5; ++round) {
    for (auto& [f, recs] : pred) {
      std::erase_if(recs, [&](const MotRecord&) { return rng.Bernoulli(0.1); });
    }
    const auto r = EvaluateMot(gt, pred);
    EXPECT_LE(*r.mota, previous);
    EXPECT_EQ(r.false_positives, 0);
    previous = *r.mota;
  }
}

TEST(GeneratorProperty, SameSeedSameFiles) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto sc = possense::testing::TenWalkersScenario(seed, 1.5, 0.05);
    possense::testing::TempDir a("gen_a");
    possense::testing::TempDir b("gen_b");
    const auto pa = synth::WriteBundle(synth::Generate(sc), a.path());
    const auto pb = synth::WriteBundle(synth::Generate(sc), b.path());
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t k = 0; k < pa.size(); ++k) {
      EXPECT_EQ(cli::Sha256File(pa[k]), cli::Sha256File(pb[k]));
    }
  }
}

}  // namespace
}  // namespace possense::evaluation
