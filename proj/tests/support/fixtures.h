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

#ifndef POSSENSE_TESTS_SUPPORT_FIXTURES_H_
#define POSSENSE_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "possense/evaluation/grouping_metrics.h"
#include "possense/evaluation/mot_metrics.h"
#include "possense/grouping/group_detector.h"
#include "possense/grouping/grouping_io.h"
#include "possense/synth/generator.h"
#include "possense/synth/scenario.h"
#include "possense/tracking/tracker.h"

namespace possense::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string ReadText(const std::filesystem::path& path);
void WriteText(const std::filesystem::path& path, const std::string& text);

// Two agents on crossing diagonals, meeting mid-run.
synth::Scenario CrossingScenario(std::uint64_t seed);

// `agents` walkers split into planted groups and singletons on parallel
// lanes; lanes are more than 3 * 2.134 m apart.
synth::Scenario PlantedGroupsScenario(std::uint64_t seed, int agents,
                                      double pixel_sigma, double dropout);

// Ten passers-by crossing the view at staggered times within 60 s.
synth::Scenario TenWalkersScenario(std::uint64_t seed, double pixel_sigma,
                                   double dropout);

// Two side-by-side walkers, one standing person far away and two joggers
// brushing past the pair.
synth::Scenario ReenactmentScenario(std::uint64_t seed);

struct PipelineRun {
  synth::GeneratedBundle bundle;
  std::vector<tracking::Tracklet> tracklets;
  TrajectorySet world;
  std::vector<grouping::WindowResult> windows;
  grouping::GroupingTable predicted;
  evaluation::MotReport mot;
  evaluation::GroupReport grouping;
};

// synth -> track -> map -> group -> evaluate, all in memory with default
// parameters.
PipelineRun RunPipeline(const synth::Scenario& sc, int min_tracklet_len = 4);

// Tracker output rendered as a MOT sequence.
evaluation::MotSequence TrackletsToMot(
    const std::vector<tracking::Tracklet>& tracklets);

grouping::GroupingTable ToTable(
    const std::vector<grouping::WindowResult>& windows);

}  // namespace possense::testing

#endif  // POSSENSE_TESTS_SUPPORT_FIXTURES_H_
