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
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "possense/model/errors.h"
#include "possense/synth/generator.h"
#include "possense/tracking/distances.h"
#include "possense/tracking/hungarian.h"
#include "possense/tracking/kalman_filter.h"
#include "possense/tracking/track_io.h"
#include "possense/tracking/tracker.h"
#include "support/fixtures.h"

namespace possense::tracking {
namespace {

Gaussian8 StateWithVelocity(double dx, double dy) {
  Gaussian8 g;
  g.mean << 100, 100, 0.5, 80, dx, dy, 0, 0;
  g.covariance = Matrix8::Identity();
  return g;
}

TEST(KalmanPredict, ZeroVelocityKeepsPosition) {
  const KalmanModel model;
  auto g = StateWithVelocity(0, 0);
  model.Predict(g, 1);
  EXPECT_DOUBLE_EQ(g.mean(0), 100);
  EXPECT_DOUBLE_EQ(g.mean(1), 100);
  EXPECT_DOUBLE_EQ(g.mean(2), 0.5);
  EXPECT_DOUBLE_EQ(g.mean(3), 80);
}

TEST(KalmanPredict, ConstantVelocityStep) {
  const KalmanModel model;
  auto g = StateWithVelocity(2, -1);
  model.Predict(g, 1);
  EXPECT_DOUBLE_EQ(g.mean(0), 102);
  EXPECT_DOUBLE_EQ(g.mean(1), 99);
}

TEST(KalmanPredict, MultiFrameEqualsRepeatedSingleSteps) {
  const KalmanModel model;
  auto jump = StateWithVelocity(2, -1);
  model.Predict(jump, 3);
  auto steps = StateWithVelocity(2, -1);
  for (int k = 0; k < 3; ++k) model.Predict(steps, 1);
  EXPECT_DOUBLE_EQ(jump.mean(0), 106);
  EXPECT_DOUBLE_EQ(jump.mean(1), 97);
  EXPECT_TRUE(jump.mean.isApprox(steps.mean, 1e-12));
  EXPECT_TRUE(jump.covariance.isApprox(steps.covariance, 1e-12));
}

TEST(KalmanUpdate, ZeroInnovationKeepsMean) {
  const KalmanModel model;
  auto g = model.Initiate(Vector4(320, 240, 0.4, 100));
  model.Predict(g, 1);
  const Vector8 before = g.mean;
  model.Update(g, model.Project(g).mean);
  EXPECT_LT((g.mean - before).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(KalmanUpdate, NoiselessMeasurementIsAdoptedExactly) {
  NoiseWeights w;
  w.measurement_position = 0.0;
  w.measurement_aspect = 0.0;
  const KalmanModel model(w);
  auto g = model.Initiate(Vector4(320, 240, 0.4, 100));
  model.Predict(g, 1);
  const Vector4 z(331, 236, 0.45, 104);
  model.Update(g, z);
  EXPECT_NEAR(g.mean(0), z(0), 1e-9);
  EXPECT_NEAR(g.mean(1), z(1), 1e-9);
  EXPECT_NEAR(g.mean(2), z(2), 1e-12);
  EXPECT_NEAR(g.mean(3), z(3), 1e-9);
}

TEST(KalmanUpdate, DiagonalPriorMatchesScalarUpdates) {
  const KalmanModel model;
  Gaussian8 g;
  g.mean << 200, 150, 0.5, 90, 1, -2, 0, 0.5;
  Vector8 p;
  p << 9, 16, 0.04, 25, 2, 3, 0.01, 1;
  g.covariance = p.asDiagonal();
  const Vector4 z(205, 141, 0.55, 95);
  const Vector4 r = model.MeasurementNoise(g.mean(3)).diagonal();
  Vector8 expected = g.mean;
  for (int k = 0; k < 4; ++k) {
    const double gain = p(k) / (p(k) + r(k));
    expected(k) = g.mean(k) + gain * (z(k) - g.mean(k));
  }
  model.Update(g, z);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(g.mean(k), expected(k), 1e-9) << k;
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(g.covariance(k, k), p(k) * r(k) / (p(k) + r(k)), 1e-9);
  }
}

TEST(KalmanUpdate, NonPositiveDefiniteInnovationFails) {
  NoiseWeights w;
  w.measurement_position = 0.0;
  w.measurement_aspect = 0.0;
  const KalmanModel model(w);
  Gaussian8 g;
  g.mean << 1, 1, 1, 1, 0, 0, 0, 0;
  g.covariance = Matrix8::Zero();
  try {
    model.Update(g, Vector4(1, 1, 1, 1));
    FAIL() << "expected a numerical error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumerical);
  }
}

TEST(Distances, MahalanobisExamples) {
  EXPECT_DOUBLE_EQ(MahalanobisSquared(Vector4(1, 2, 0, 0), Matrix4::Identity()),
                   5.0);
  Matrix4 s = Matrix4::Identity();
  s(0, 0) = 4.0;
  EXPECT_DOUBLE_EQ(MahalanobisSquared(Vector4(2, 0, 0, 0), s), 1.0);
}

TEST(Distances, MotionDistanceZeroAtProjection) {
  const KalmanModel model;
  const auto g = model.Initiate(Vector4(100, 200, 0.5, 60));
  const Projection proj = model.Project(g);
  const BBox box = TrackState::FromVector(g.mean).ToBox();
  EXPECT_NEAR(MotionDistance(proj, box), 0.0, 1e-9);
}

Appearance Basis(int k) {
  Appearance a(kAppearanceDim, 0.0f);
  a[k] = 1.0f;
  return a;
}

TEST(Distances, AppearanceExamples) {
  std::deque<Appearance> same{Basis(3)};
  EXPECT_NEAR(*AppearanceDistance(same, Basis(3)), 0.0, 1e-12);
  std::deque<Appearance> e1{Basis(0)};
  EXPECT_NEAR(*AppearanceDistance(e1, Basis(1)), 1.0, 1e-12);
  Appearance diag(kAppearanceDim, 0.0f);
  diag[0] = diag[1] = static_cast<float>(1.0 / std::sqrt(2.0));
  std::deque<Appearance> gallery{Basis(0), diag};
  EXPECT_NEAR(*AppearanceDistance(gallery, Basis(1)), 1.0 - 1.0 / std::sqrt(2.0),
              1e-6);
  EXPECT_FALSE(AppearanceDistance(gallery, std::nullopt).has_value());
  EXPECT_FALSE(AppearanceDistance({}, Basis(1)).has_value());
}

TEST(Distances, CombinedCostGating) {
  const Gates gates;
  EXPECT_EQ(CombinedCost(gates.chi2 + 0.1, 0.0, 0.0, gates).d_comb, kInfeasibleCost);
  EXPECT_EQ(kInfeasibleCost, 1e5);
  const auto zero = CombinedCost(0.0, 0.0, 0.0, gates);
  EXPECT_EQ(zero.d_comb, 0.0);
  EXPECT_TRUE(zero.motion_ok);
  EXPECT_TRUE(zero.appearance_ok);
  Gates wide;
  wide.appearance = 0.5;
  EXPECT_DOUBLE_EQ(CombinedCost(1.0, 0.3, 0.0, wide).d_comb, 0.3);
  EXPECT_DOUBLE_EQ(CombinedCost(2.0, 0.3, 1.0, wide).d_comb, 2.0);
  EXPECT_EQ(CombinedCost(1.0, 0.3, 0.0, gates).d_comb, kInfeasibleCost);
  // Without appearance the motion distance is the cost.
  EXPECT_DOUBLE_EQ(CombinedCost(4.0, std::nullopt, 0.0, gates).d_comb, 4.0);
}

TEST(Distances, IouExamples) {
  const BBox a{0, 0, 10, 10};
  EXPECT_DOUBLE_EQ(Iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(Iou(a, BBox{20, 20, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(Iou(a, BBox{10, 0, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(Iou(a, BBox{5, 0, 10, 10}), 1.0 / 3.0);
}

TEST(Hungarian, SmallExamples) {
  Eigen::MatrixXd c(2, 2);
  c << 1, 2, 2, 1;
  const auto a = HungarianAssign(c);
  EXPECT_EQ(a.matches, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(a.total_cost, 2.0);
  Eigen::MatrixXd one(1, 1);
  one << 5;
  EXPECT_EQ(HungarianAssign(one).matches.size(), 1u);
  const auto empty = HungarianAssign(Eigen::MatrixXd(0, 3));
  EXPECT_TRUE(empty.matches.empty());
  EXPECT_EQ(empty.unmatched_cols.size(), 3u);
}

TEST(Hungarian, InfeasiblePairsStayUnmatched) {
  Eigen::MatrixXd c(2, 2);
  c << 1e5, 1e5, 3, 1e5;
  const auto a = HungarianAssign(c);
  ASSERT_EQ(a.matches.size(), 1u);
  EXPECT_EQ(a.matches[0], (std::pair<int, int>{1, 0}));
  EXPECT_EQ(a.unmatched_rows, std::vector<int>{0});
  EXPECT_EQ(a.unmatched_cols, std::vector<int>{1});
}

FrameDetections OneBox(int frame, const BBox& box) {
  Detection d;
  d.frame_index = frame;
  d.bbox = box;
  return {frame, {d}};
}

TEST(TrackerLifecycle, StationaryDetectionKeepsOneId) {
  TrackerConfig cfg;
  Tracker tracker(cfg, FrameClock(7, 1));
  for (int f = 1; f <= 20; ++f) tracker.Step(OneBox(f, {100, 100, 40, 100}));
  const auto tracklets = tracker.ConfirmedTracklets();
  ASSERT_EQ(tracklets.size(), 1u);
  EXPECT_EQ(tracklets[0].observations.size(), 20u);
}

TEST(TrackerLifecycle, DeletedAfterMaxAgeMisses) {
  TrackerConfig cfg;
  cfg.max_age = 5;
  Tracker tracker(cfg, FrameClock(7, 1));
  int f = 1;
  for (; f <= 4; ++f) tracker.Step(OneBox(f, {100, 100, 40, 100}));
  for (int k = 0; k < cfg.max_age; ++k) tracker.Step({f++, {}});
  EXPECT_EQ(tracker.tracks().size(), 1u);
  tracker.Step({f++, {}});
  EXPECT_TRUE(tracker.tracks().empty());
  // The same place later starts a new identity.
  for (int k = 0; k < 4; ++k) tracker.Step(OneBox(f++, {100, 100, 40, 100}));
  EXPECT_EQ(tracker.ConfirmedTracklets().size(), 2u);
}

TEST(TrackerLifecycle, FrameRegressionIsAnError) {
  Tracker tracker(TrackerConfig{}, FrameClock(7, 1));
  tracker.Step(OneBox(3, {1, 1, 5, 10}));
  EXPECT_THROW(tracker.Step(OneBox(3, {1, 1, 5, 10})), Error);
}

TEST(TrackerLifecycle, NonPersonDetectionsIgnored) {
  Tracker tracker(TrackerConfig{}, FrameClock(7, 1));
  for (int f = 1; f <= 6; ++f) {
    auto frame = OneBox(f, {10, 10, 40, 40});
    frame.detections[0].class_label = ClassLabel::kNonPerson;
    tracker.Step(frame);
  }
  EXPECT_TRUE(tracker.ConfirmedTracklets().empty());
}

TEST(TrackerCrossing, DistinctAppearancesSurviveCrossing) {
  const auto run = testing::RunPipeline(testing::CrossingScenario(11));
  EXPECT_EQ(run.mot.id_switches, 0);
  EXPECT_EQ(run.tracklets.size(), 2u);
  ASSERT_TRUE(run.mot.mota.has_value());
  EXPECT_DOUBLE_EQ(*run.mot.mota, 1.0);
}

Tracklet OfLength(int id, int n) {
  Tracklet t;
  t.track_id = id;
  for (int k = 0; k < n; ++k) t.observations.push_back({id, k + 1});
  return t;
}

TEST(TrackletFilter, MinimumLengthIsInclusive) {
  const auto kept = FilterShortTracklets({OfLength(1, 3), OfLength(2, 4)}, 4);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].track_id, 2);
  EXPECT_EQ(FilterShortTracklets({OfLength(1, 1), OfLength(2, 2)}, 1).size(), 2u);
  EXPECT_THROW(FilterShortTracklets({}, 0), Error);
}

TEST(TrackFile, MotLinesOrderedByFrameThenId) {
  Tracklet a = OfLength(2, 2);
  Tracklet b = OfLength(1, 1);
  for (auto* t : {&a, &b}) {
    for (auto& o : t->observations) {
      o.box = {1, 2, 3, 4};
      o.confidence = 1.0;
    }
  }
  std::ostringstream out;
  WriteTrackFile(out, {a, b});
  EXPECT_EQ(out.str(),
            "1,1,1,2,3,4,1,-1,-1,-1\n1,2,1,2,3,4,1,-1,-1,-1\n"
            "2,2,1,2,3,4,1,-1,-1,-1\n");
}

TEST(TrackerConfigTest, RejectsBadValues) {
  TrackerConfig cfg;
  cfg.n_init = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = TrackerConfig{};
  cfg.lambda_mix = 1.5;
  EXPECT_THROW(cfg.Validate(), Error);
}

}  // namespace
}  // namespace possense::tracking
