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

#include "support/fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "possense/mapping/world_mapping.h"
#include "possense/synth/rng.h"

namespace possense::testing {

namespace fs = std::filesystem;

namespace {

std::atomic<int> g_counter{0};

// A higher, wider view than the default so several lanes fit at once.
mapping::CameraModel WideCamera() {
  const auto base = synth::OverheadCamera(10.0, 35.0);
  return mapping::CameraModel(mapping::Intrinsics{700.0, 700.0, 640.0, 360.0},
                              mapping::Distortion{}, base.rotation(),
                              base.translation(), ImageSize{1280, 720});
}

synth::AgentSpec Walker(int id, int group, std::vector<Eigen::Vector2d> path,
                        double speed) {
  synth::AgentSpec a;
  a.agent_id = id;
  a.group_id = group;
  a.waypoints = std::move(path);
  a.speed = speed;
  return a;
}

synth::AgentSpec Follower(int id, int group) {
  synth::AgentSpec a;
  a.agent_id = id;
  a.group_id = group;
  return a;
}

}  // namespace

TempDir::TempDir(const std::string& tag) {
  path_ = fs::temp_directory_path() /
          ("possense_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(g_counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

synth::Scenario CrossingScenario(std::uint64_t seed) {
  synth::Scenario sc;
  sc.seed = seed;
  sc.duration_s = 12.0;
  sc.camera = synth::DefaultCamera();
  sc.agents.push_back(Walker(1, -1, {{-4.0, 8.0}, {4.0, 18.0}}, 1.3));
  sc.agents.push_back(Walker(2, -1, {{4.0, 8.0}, {-4.0, 18.0}}, 1.3));
  return sc;
}

synth::Scenario PlantedGroupsScenario(std::uint64_t seed, int agents,
                                      double pixel_sigma, double dropout) {
  synth::Scenario sc;
  sc.seed = seed;
  sc.duration_s = 20.0;
  sc.camera = WideCamera();
  sc.noise.pixel_sigma = pixel_sigma;
  sc.noise.dropout_prob = dropout;
  // Six slots: three columns 8.5 m apart, two rows 10 m apart. A group of
  // up to three spreads at most 2.134 m towards -x from its slot.
  const double columns[3] = {-8.0, 0.5, 9.0};
  const double rows[2] = {7.0, 17.0};
  // Group sizes fill the slots in order; leftover slots take singletons.
  const int sizes[6] = {3, 2, 2, 1, 1, 1};
  int id = 1;
  int group = 1;
  synth::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int slot = 0; slot < 6 && id <= agents; ++slot) {
    const double x = columns[slot % 3];
    const double y = rows[slot / 3];
    const double speed = rng.Uniform(0.9, 1.1);
    const int size = std::min(sizes[slot], agents - id + 1);
    if (size == 1) {
      sc.agents.push_back(Walker(id++, -1, {{x, y}, {x, y + 22.0}}, speed));
      continue;
    }
    sc.agents.push_back(Walker(id++, group, {{x, y}, {x, y + 22.0}}, speed));
    for (int k = 1; k < size; ++k) sc.agents.push_back(Follower(id++, group));
    ++group;
  }
  return sc;
}

synth::Scenario TenWalkersScenario(std::uint64_t seed, double pixel_sigma,
                                   double dropout) {
  synth::Scenario sc;
  sc.seed = seed;
  sc.duration_s = 60.0;
  sc.camera = WideCamera();
  sc.noise.pixel_sigma = pixel_sigma;
  sc.noise.dropout_prob = dropout;
  synth::Rng rng(seed * 7919 + 17);
  // Passers-by: straight crossings between opposite sides of the walkable
  // area [-9, 9] x [9, 30], staggered in time so paths cross.
  auto side_point = [&](int side) -> Eigen::Vector2d {
    switch (side) {
      case 0: return {-9.0, rng.Uniform(10.0, 29.0)};
      case 1: return {9.0, rng.Uniform(10.0, 29.0)};
      case 2: return {rng.Uniform(-8.0, 8.0), 9.0};
      default: return {rng.Uniform(-8.0, 8.0), 30.0};
    }
  };
  for (int id = 1; id <= 10; ++id) {
    const int side = static_cast<int>(rng.Below(4));
    const Eigen::Vector2d from = side_point(side);
    const Eigen::Vector2d to = side_point(side ^ 1);
    auto a = Walker(id, -1, {from, to}, rng.Uniform(1.0, 1.5));
    a.start_time = rng.Uniform(0.0, 40.0);
    sc.agents.push_back(a);
  }
  return sc;
}

synth::Scenario ReenactmentScenario(std::uint64_t seed) {
  synth::Scenario sc;
  sc.seed = seed;
  sc.duration_s = 20.0;
  sc.fps = 15.0;
  sc.camera = WideCamera();
  // G1: a pair 1.1 m apart walking +y.
  sc.agents.push_back(Walker(1, 1, {{0.0, 8.0}, {0.0, 28.0}}, 1.0));
  auto second = Follower(2, 1);
  second.lateral_offset = 1.1;
  sc.agents.push_back(second);
  // G3: two joggers 1.0 m apart running -y, 1.2 m to the side of G1.
  auto jogger = Walker(3, 2, {{1.2, 30.0}, {1.2, 6.0}}, 2.5);
  jogger.start_time = 4.0;
  sc.agents.push_back(jogger);
  auto jogger2 = Follower(4, 2);
  jogger2.lateral_offset = 1.0;
  sc.agents.push_back(jogger2);
  // G2: one person standing 7.4 m from the joggers' outer line.
  sc.agents.push_back(Walker(5, -1, {{9.6, 17.0}}, 0.0));
  return sc;
}

evaluation::MotSequence TrackletsToMot(
    const std::vector<tracking::Tracklet>& tracklets) {
  evaluation::MotSequence seq;
  for (const auto& t : tracklets) {
    for (const auto& o : t.observations) {
      seq[o.frame_index].push_back(
          {o.frame_index, t.track_id, o.box, o.confidence});
    }
  }
  for (auto& [f, recs] : seq) {
    std::sort(recs.begin(), recs.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
  }
  return seq;
}

grouping::GroupingTable ToTable(
    const std::vector<grouping::WindowResult>& windows) {
  grouping::GroupingTable table;
  for (const auto& w : windows) table[w.window_id] = w.partition.groups;
  return table;
}

PipelineRun RunPipeline(const synth::Scenario& sc, int min_tracklet_len) {
  PipelineRun run;
  run.bundle = synth::Generate(sc);
  const FrameClock clock(sc.fps, 1);
  tracking::TrackerConfig tcfg;
  run.tracklets = tracking::FilterShortTracklets(
      tracking::RunTracker(run.bundle.detections, tcfg, clock),
      min_tracklet_len);
  run.world = mapping::MapTracklets(run.tracklets, sc.camera, clock);
  grouping::GroupingParams gp;
  gp.window_s = sc.window_s;
  gp.stride_s = sc.stride_s;
  run.windows = grouping::DetectGroupsAll(run.world, gp);
  run.predicted = ToTable(run.windows);
  const auto pred = TrackletsToMot(run.tracklets);
  run.mot = evaluation::EvaluateMot(run.bundle.gt, pred);
  const auto id_map = evaluation::MapPredictedIds(run.bundle.gt, pred);
  run.grouping =
      evaluation::EvaluateGroupings(run.bundle.groups_gt, run.predicted, &id_map);
  return run;
}

}  // namespace possense::testing
