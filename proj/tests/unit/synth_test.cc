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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "possense/mapping/camera_model.h"
#include "possense/model/errors.h"
#include "possense/synth/generator.h"
#include "possense/synth/perturb.h"
#include "possense/synth/rng.h"
#include "possense/synth/scenario.h"
#include "support/fixtures.h"

namespace possense::synth {
namespace {

Scenario Standing(double dropout, double sigma) {
  Scenario sc;
  sc.seed = 5;
  sc.camera = DefaultCamera();
  sc.duration_s = 100.0;
  sc.fps = 10.0;
  AgentSpec a;
  a.agent_id = 1;
  a.waypoints = {{0.5, 10.0}};
  sc.agents = {a};
  sc.noise.dropout_prob = dropout;
  sc.noise.pixel_sigma = sigma;
  return sc;
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 100; ++k) ASSERT_EQ(a.Next(), b.Next());
  Rng c(43);
  EXPECT_NE(Rng(42).Next(), c.Next());
}

TEST(Generator, DropoutRateNearTarget) {
  const auto bundle = Generate(Standing(0.1, 0.0));
  EXPECT_EQ(bundle.stats.visible_observations, 1000);
  EXPECT_GE(bundle.stats.dropped, 70);
  EXPECT_LE(bundle.stats.dropped, 130);
}

TEST(Generator, NoiselessBoxesReprojectOntoTruth) {
  const auto sc = Standing(0.0, 0.0);
  const auto bundle = Generate(sc);
  ASSERT_EQ(bundle.detections.size(), 1000u);
  for (const auto& f : bundle.detections) {
    ASSERT_EQ(f.detections.size(), 1u);
    const auto anchor = mapping::GroundAnchorPixel(f.detections[0]);
    const auto w = sc.camera.BackprojectToGround(anchor.u, anchor.v);
    ASSERT_LT(std::hypot(w.x - 0.5, w.y - 10.0), 1e-6);
  }
}

TEST(Generator, Deterministic) {
  const auto sc = possense::testing::PlantedGroupsScenario(3, 6, 1.0, 0.05);
  const auto a = Generate(sc);
  const auto b = Generate(sc);
  ASSERT_EQ(a.detections.size(), b.detections.size());
  for (std::size_t f = 0; f < a.detections.size(); ++f) {
    ASSERT_EQ(a.detections[f].detections.size(),
              b.detections[f].detections.size());
    for (std::size_t k = 0; k < a.detections[f].detections.size(); ++k) {
      EXPECT_EQ(a.detections[f].detections[k].bbox,
                b.detections[f].detections[k].bbox);
    }
  }
  EXPECT_EQ(a.groups_gt, b.groups_gt);
}

TEST(Generator, FollowersStayBesideLeader) {
  Scenario sc;
  sc.camera = DefaultCamera();
  AgentSpec lead;
  lead.agent_id = 1;
  lead.group_id = 1;
  lead.waypoints = {{0, 8}, {0, 20}};
  AgentSpec f2;
  f2.agent_id = 2;
  f2.group_id = 1;
  AgentSpec f3 = f2;
  f3.agent_id = 3;
  sc.agents = {lead, f2, f3};
  Rng rng(1);
  const auto resolved = ResolveAgents(sc, rng);
  ASSERT_EQ(resolved.size(), 3u);
  EXPECT_EQ(resolved[2].waypoints, lead.waypoints);
  const double o2 = *resolved[1].lateral_offset;
  const double o3 = *resolved[2].lateral_offset;
  EXPECT_GE(o2, 0.4);
  EXPECT_GE(o3 - o2, 0.4 - 1e-12);
  EXPECT_LE(o3, 1.2 + 1e-12);
  const auto p1 = AgentPosition(resolved[0], 3.0, sc.duration_s);
  const auto p2 = AgentPosition(resolved[1], 3.0, sc.duration_s);
  ASSERT_TRUE(p1 && p2);
  // Walking along +y, the left side is -x.
  EXPECT_NEAR(p2->x(), -o2, 1e-12);
  EXPECT_NEAR(p2->y(), p1->y(), 1e-12);
}

TEST(Generator, AgentLeavesAtPathEnd) {
  AgentSpec a;
  a.waypoints = {{0, 0}, {10, 0}};
  a.speed = 2.0;
  EXPECT_TRUE(AgentPosition(a, 4.9, 60.0).has_value());
  EXPECT_FALSE(AgentPosition(a, 5.1, 60.0).has_value());
}

TEST(Generator, GroupTruthPerWindow) {
  const auto bundle = Generate(possense::testing::PlantedGroupsScenario(1, 4, 0.0, 0.0));
  ASSERT_EQ(bundle.groups_gt.size(), 2u);
  const grouping::Groups expected{{1, 2, 3}, {4}};
  EXPECT_EQ(bundle.groups_gt.at(0), expected);
}

TEST(Scenario, JsonRoundTripAndValidation) {
  const auto sc = possense::testing::CrossingScenario(9);
  const auto back = ScenarioFromJson(ScenarioToJson(sc));
  EXPECT_EQ(back.seed, sc.seed);
  EXPECT_EQ(back.agents.size(), sc.agents.size());
  EXPECT_EQ(back.agents[1].waypoints, sc.agents[1].waypoints);
  Scenario bad = sc;
  bad.fps = 0.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = sc;
  bad.agents[1].agent_id = bad.agents[0].agent_id;
  EXPECT_THROW(bad.Validate(), Error);
}

evaluation::MotSequence TwoIdentities() {
  evaluation::MotSequence gt;
  for (int f = 1; f <= 30; ++f) {
    gt[f] = {{f, 1, BBox{0, 0, 10, 20}, 1.0}, {f, 2, BBox{200, 0, 10, 20}, 1.0}};
  }
  return gt;
}

TEST(Perturb, ExactSwitchCounts) {
  const auto gt = TwoIdentities();
  EXPECT_EQ(CountIdBoundaries(gt), 58);
  for (int k : {0, 5}) {
    const auto r = evaluation::EvaluateMot(gt, PerturbIds(gt, k, 17));
    EXPECT_EQ(r.id_switches, k);
  }
  EXPECT_THROW(PerturbIds(gt, 59, 1), Error);
}

TEST(Bundle, FilesWritten) {
  possense::testing::TempDir dir("bundle");
  const auto paths = WriteBundle(Generate(Standing(0.0, 0.0)), dir.path());
  EXPECT_EQ(paths.size(), 5u);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
}

}  // namespace
}  // namespace possense::synth
