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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "possense/cli/commands.h"
#include "possense/cli/manifest.h"
#include "possense/evaluation/mot_metrics.h"
#include "possense/grouping/correlation_clustering.h"
#include "possense/grouping/features.h"
#include "possense/mapping/camera_model.h"
#include "possense/monitoring/timeline.h"
#include "possense/monitoring/violations.h"
#include "possense/synth/perturb.h"
#include "possense/synth/rng.h"
#include "possense/synth/scenario.h"
#include "possense/tracking/distances.h"
#include "possense/tracking/hungarian.h"
#include "possense/tracking/kalman_filter.h"
#include "support/fixtures.h"

#ifndef POSSENSE_DATA_DIR
#define POSSENSE_DATA_DIR "data"
#endif

namespace {

using namespace possense;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Exhaustive minimum over injective row->column maps of a small matrix.
double BruteForceAssignment(const Eigen::MatrixXd& c) {
  const int rows = static_cast<int>(c.rows());
  const int cols = static_cast<int>(c.cols());
  std::vector<int> perm(std::max(rows, cols));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    if (rows <= cols) {
      for (int r = 0; r < rows; ++r) total += c(r, perm[r]);
    } else {
      for (int k = 0; k < cols; ++k) total += c(perm[k], k);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Outcome AssignmentOptimality() {
  synth::Rng rng(101);
  const auto start = Clock::now();
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int rows = 1 + static_cast<int>(rng.Below(7));
    const int cols = 1 + static_cast<int>(rng.Below(7));
    Eigen::MatrixXd c(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int k = 0; k < cols; ++k) c(r, k) = static_cast<double>(rng.Below(100));
    }
    const auto a = tracking::HungarianAssign(c);
    if (static_cast<int>(a.matches.size()) != std::min(rows, cols) ||
        a.total_cost != BruteForceAssignment(c)) {
      ++mismatches;
    }
  }
  const double elapsed = Seconds(start);
  return {mismatches == 0 && elapsed < 5.0,
          "500 matrices, " + std::to_string(mismatches) + " mismatches, " +
              Num(elapsed, 3) + " s"};
}

Outcome KalmanGating() {
  synth::Rng rng(202);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    tracking::Vector4 r;
    for (int d = 0; d < 4; ++d) r(d) = rng.Normal(0.0, 10.0);
    const double m = tracking::MahalanobisSquared(r, tracking::Matrix4::Identity());
    const double e = r(0) * r(0) + r(1) * r(1) + r(2) * r(2) + r(3) * r(3);
    worst = std::max(worst, std::abs(m - e));
  }
  const tracking::KalmanModel model;
  tracking::Vector4 z(640.0, 360.0, 0.4, 120.0);
  auto g = model.Initiate(z);
  double asym = 0.0;
  bool pd = true;
  for (int step = 0; step < 10000; ++step) {
    model.Predict(g, 1);
    z(0) += 1.5 + rng.Normal(0.0, 1.0);
    z(1) += -0.5 + rng.Normal(0.0, 1.0);
    z(2) = 0.4 + rng.Normal(0.0, 0.01);
    z(3) = 120.0 + rng.Normal(0.0, 2.0);
    if (z(0) > 1e5) z(0) = 640.0;
    model.Update(g, z);
    const auto& p = g.covariance;
    asym = std::max(asym, (p - p.transpose()).cwiseAbs().maxCoeff() /
                              p.cwiseAbs().maxCoeff());
    if (Eigen::LLT<tracking::Matrix8>(p).info() != Eigen::Success) pd = false;
  }
  return {worst <= 1e-12 && asym <= 1e-12 && pd,
          "max |maha - eucl| = " + Num(worst, 15) + ", max relative asymmetry " +
              Num(asym, 15) + (pd ? ", positive definite" : ", NOT positive definite")};
}

double RoundTripWorst(const mapping::CameraModel& cam, std::uint64_t seed) {
  synth::Rng rng(seed);
  double worst = 0.0;
  int done = 0;
  while (done < 10000) {
    const double u = rng.Uniform(0.0, cam.image_size().width);
    const double v = rng.Uniform(0.0, cam.image_size().height);
    WorldPoint m;
    try {
      m = cam.BackprojectToGround(u, v);
    } catch (const Error&) {
      continue;  // above the horizon
    }
    if (std::hypot(m.x, m.y) > 200.0) continue;
    const PixelPoint p = cam.Project(m);
    const WorldPoint back = cam.BackprojectToGround(p.u, p.v);
    worst = std::max(worst, std::hypot(back.x - m.x, back.y - m.y));
    ++done;
  }
  return worst;
}

Outcome MappingRoundTrip() {
  const auto base = synth::DefaultCamera();
  mapping::Distortion barrel;
  barrel.k1 = -0.2;
  const mapping::CameraModel distorted(base.intrinsics(), barrel, base.rotation(),
                                       base.translation(), base.image_size());
  const double e0 = RoundTripWorst(base, 303);
  const double e1 = RoundTripWorst(distorted, 304);
  return {e0 < 1e-6 && e1 < 1e-4,
          "worst error " + Num(e0 * 1e9, 3) + " nm undistorted, " +
              Num(e1 * 1e9, 3) + " nm with k1=-0.2"};
}

Outcome TrackingEndToEnd() {
  const auto clean = testing::RunPipeline(testing::CrossingScenario(404));
  const bool clean_ok = clean.mot.id_switches == 0 && clean.mot.mota &&
                        *clean.mot.mota == 1.0;
  std::string detail = "crossing: IDs=" + std::to_string(clean.mot.id_switches) +
                       " MOTA=" + Num(clean.mot.mota.value_or(-1.0), 6);
  bool noisy_ok = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto run = testing::RunPipeline(testing::TenWalkersScenario(seed, 2.0, 0.05));
    const int planted = 10;
    const int ids = static_cast<int>(run.tracklets.size());
    const double mota = run.mot.mota.value_or(-1.0);
    const bool ok = mota >= 0.85 && std::abs(ids - planted) <= 0.1 * planted;
    noisy_ok = noisy_ok && ok;
    detail += "; seed " + std::to_string(seed) + ": MOTA=" + Num(mota) +
              " ids=" + std::to_string(ids) + "/" + std::to_string(planted);
  }
  return {clean_ok && noisy_ok, detail};
}

// Set partitions by restricted growth strings.
double BruteForceClustering(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  grouping::Labels labels(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(int, int)> rec = [&](int k, int used) {
    if (k == n) {
      best = std::max(best, grouping::PartitionObjective(w, labels));
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[k] = c;
      rec(k + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

Outcome ClusteringExactness() {
  synth::Rng rng(505);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    grouping::AffinityMatrix a;
    a.ids.resize(n);
    std::iota(a.ids.begin(), a.ids.end(), 1);
    a.w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) a.w(i, j) = a.w(j, i) = rng.Uniform(-1.0, 1.0);
    }
    const auto part = grouping::CorrelationClustering(a);
    if (std::abs(part.objective - BruteForceClustering(a.w)) > 1e-9) ++mismatches;
  }
  return {mismatches == 0, "200 matrices, " + std::to_string(mismatches) + " mismatches"};
}

Outcome GroupingRecovery() {
  bool clean_ok = true;
  std::string detail = "clean F1:";
  for (int agents = 2; agents <= 10; ++agents) {
    const auto run = testing::RunPipeline(
        testing::PlantedGroupsScenario(600 + agents, agents, 0.0, 0.0));
    const double f1 = run.grouping.f1.value_or(-1.0);
    clean_ok = clean_ok && f1 == 1.0;
    detail += " " + std::to_string(agents) + " agents " + Num(f1);
  }
  double sum = 0.0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto run =
        testing::RunPipeline(testing::PlantedGroupsScenario(seed, 10, 2.0, 0.05));
    const double f1 = run.grouping.f1.value_or(0.0);
    sum += f1;
    worst = std::min(worst, f1);
  }
  const double mean = sum / 20.0;
  detail += "; noisy mean F1 over 20 seeds " + Num(mean) + " (min " + Num(worst) + ")";
  return {clean_ok && mean >= 0.9, detail};
}

Outcome MetricsSelfConsistency() {
  const auto bundle = synth::Generate(testing::TenWalkersScenario(7, 0.0, 0.0));
  const auto self = evaluation::EvaluateMot(bundle.gt, bundle.gt);
  const bool self_ok = self.mota && *self.mota == 1.0 && self.motp &&
                       *self.motp == 1.0 && self.id_switches == 0;
  std::string detail = "self MOTA=" + Num(self.mota.value_or(-1)) +
                       " MOTP=" + Num(self.motp.value_or(-1)) +
                       " IDs=" + std::to_string(self.id_switches) + "; planted";
  bool planted_ok = true;
  for (int k : {0, 1, 3, 5, 12}) {
    const auto r = evaluation::EvaluateMot(bundle.gt, synth::PerturbIds(bundle.gt, k, 70 + k));
    planted_ok = planted_ok && r.id_switches == k;
    detail += " " + std::to_string(k) + "->" + std::to_string(r.id_switches);
  }
  const std::vector<Eigen::Vector2d> p0{{0, 0}}, p1{{3, 4}};
  const std::vector<Eigen::Vector2d> q0{{0, 0}, {1, 0}}, q1{{0, 0}, {1, 0}, {2, 0}};
  const auto d1 = grouping::DtwDistance(p0, p1);
  const auto d2 = grouping::DtwDistance(q0, q1);
  const auto d3 = grouping::DtwDistance(q1, q1);
  const bool dtw_ok = d1.gamma == 25.0 && d1.f2 == 25.0 && d2.gamma == 1.0 &&
                      d2.f2 == 1.0 / 3.0 && d3.gamma == 0.0 && d3.f2 == 0.0;
  detail += dtw_ok ? "; DTW fixtures exact" : "; DTW fixtures differ";
  return {self_ok && planted_ok && dtw_ok, detail};
}

Outcome ProxemicsValue() {
  const double v = grouping::ProxemicsGmm({0.0, 0.0}, {0.0, 0.0});
  return {std::abs(v - 0.252924) <= 1e-6, "value " + Num(v, 9)};
}

Outcome MonitoringReenactment() {
  const auto sc = testing::ReenactmentScenario(909);
  const auto run = testing::RunPipeline(sc);
  const auto pred_mot = testing::TrackletsToMot(run.tracklets);
  const auto id_map = evaluation::MapPredictedIds(run.bundle.gt, pred_mot);
  std::map<int, int> agent_group;
  for (const auto& a : sc.agents) agent_group[a.agent_id] = a.group_id < 0 ? -a.agent_id : a.group_id;
  auto truth_group = [&](int track) {
    const auto it = id_map.find(track);
    return it == id_map.end() ? -1000 - track : agent_group[it->second];
  };

  const auto timeline = monitoring::PartitionTimeline::FromResults(run.windows);
  const auto diameters = monitoring::MeasureDiameters(run.world, timeline);
  bool diam_ok = false;
  bool diam_bad = false;
  std::string diam_text;
  for (const auto& row : diameters) {
    std::set<int> g;
    for (int m : row.members) g.insert(truth_group(m));
    if (g.size() == 1 && *g.begin() == 1) {
      diam_ok = true;
      if (row.mean_m < 1.0 || row.mean_m > 1.2) diam_bad = true;
      diam_text += " " + Num(row.mean_m, 3);
    }
  }
  const auto events = monitoring::ScanViolations(run.world, timeline, {}, 1.0 / sc.fps);
  int inter = 0, intra = 0, brief_close = 0;
  std::string ev_text;
  for (const auto& e : events) {
    std::set<int> all;
    for (int m : e.group_a) all.insert(truth_group(m));
    for (int m : e.group_b) all.insert(truth_group(m));
    if (all.size() == 1) {
      ++intra;
    } else {
      ++inter;
      if (e.min_distance_m < 2.0 && e.duration_s < 5.0) ++brief_close;
    }
    ev_text += " [" + Num(e.min_distance_m, 2) + " m, " + Num(e.duration_s, 2) + " s]";
  }
  const bool ok = diam_ok && !diam_bad && inter == 1 && brief_close == 1 &&
                  intra == 0;
  return {ok, "G1 diameter" + (diam_text.empty() ? std::string(" missing") : diam_text) +
                  " m; events" + (ev_text.empty() ? std::string(" none") : ev_text)};
}

std::map<std::string, std::string> HashTree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    out[std::filesystem::relative(e.path(), root).string()] = cli::Sha256File(e.path());
  }
  return out;
}

Outcome Determinism(Clock::time_point suite_start) {
  testing::TempDir a("accept_a"), b("accept_b");
  const cli::PipelineConfig cfg;
  const std::filesystem::path scenario =
      std::filesystem::path(POSSENSE_DATA_DIR) / "demo_scenario.json";
  cli::CmdRunAll({scenario, std::nullopt, a.path() / "run"}, cfg);
  cli::CmdRunAll({scenario, std::nullopt, b.path() / "run"}, cfg);
  const auto ha = HashTree(a.path() / "run");
  const auto hb = HashTree(b.path() / "run");
  const double elapsed = Seconds(suite_start);
  const bool same = !ha.empty() && ha == hb;
  return {same && elapsed < 300.0,
          std::to_string(ha.size()) + " files " + (same ? "identical" : "DIFFER") +
              ", suite time " + Num(elapsed, 1) + " s"};
}

}  // namespace

int main() {
  const auto start = Clock::now();
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1 assignment optimality", AssignmentOptimality},
      {"C2 kalman and gating", KalmanGating},
      {"C3 mapping round trip", MappingRoundTrip},
      {"C4 tracking end to end", TrackingEndToEnd},
      {"C5 clustering exactness", ClusteringExactness},
      {"C6 grouping recovery", GroupingRecovery},
      {"C7 metrics self-consistency", MetricsSelfConsistency},
      {"C8 proxemics value", ProxemicsValue},
      {"C9 monitoring re-enactment", MonitoringReenactment},
      {"C10 determinism", [start] { return Determinism(start); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
