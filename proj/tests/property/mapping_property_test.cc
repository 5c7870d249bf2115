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

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "possense/mapping/calibration.h"
#include "possense/mapping/camera_model.h"
#include "possense/model/errors.h"
#include "possense/synth/rng.h"
#include "possense/synth/scenario.h"

namespace possense::mapping {
namespace {

CameraModel RandomCamera(synth::Rng& rng, bool distorted) {
  const auto base =
      synth::OverheadCamera(rng.Uniform(4.0, 10.0), rng.Uniform(15.0, 50.0));
  Distortion d;
  if (distorted) {
    d.k1 = rng.Uniform(-0.25, 0.05);
    d.k2 = rng.Uniform(-0.02, 0.02);
  }
  // Spin the whole rig about the vertical axis.
  const double yaw = rng.Uniform(-std::numbers::pi, std::numbers::pi);
  const Eigen::Matrix3d rz = RotationFromAxisAngle({0, 0, yaw});
  const Eigen::Matrix3d r = base.rotation() * rz.transpose();
  const Eigen::Vector3d c(rng.Uniform(-5, 5), rng.Uniform(-5, 5),
                          base.center().z());
  return CameraModel(base.intrinsics(), d, r, -r * c, base.image_size());
}

TEST(MappingProperty, GroundRoundTrip) {
  synth::Rng rng(77);
  int checked = 0;
  for (int cam_k = 0; cam_k < 40; ++cam_k) {
    const auto cam = RandomCamera(rng, cam_k % 2 == 1);
    for (int k = 0; k < 250; ++k) {
      const double u = rng.Uniform(0, cam.image_size().width);
      const double v = rng.Uniform(0, cam.image_size().height);
      WorldPoint g;
      try {
        g = cam.BackprojectToGround(u, v);
      } catch (const Error&) {
        continue;
      }
      if (std::hypot(g.x, g.y) > 200.0) continue;
      const auto p = cam.Project(g);
      ASSERT_LT(std::hypot(p.u - u, p.v - v), 1e-6);
      const auto again = cam.BackprojectToGround(p.u, p.v);
      ASSERT_LT(std::hypot(again.x - g.x, again.y - g.y), 1e-6);
      ++checked;
    }
  }
  EXPECT_GT(checked, 5000);
}

TEST(MappingProperty, AxisAngleRoundTrip) {
  synth::Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const Eigen::Vector3d axis =
        Eigen::Vector3d(rng.Normal(), rng.Normal(), rng.Normal()).normalized();
    const Eigen::Vector3d rvec = axis * rng.Uniform(0.0, 3.1);
    const Eigen::Matrix3d r = RotationFromAxisAngle(rvec);
    EXPECT_LT((AxisAngleFromRotation(r) - rvec).norm(), 1e-9);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(CalibrationProperty, NoisyRmsBoundedAcrossPoses) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    synth::Rng rng(seed);
    const auto cam = RandomCamera(rng, false);
    std::vector<Correspondence> cs;
    while (cs.size() < 12) {
      const double u = rng.Uniform(50, 1230);
      const double v = rng.Uniform(300, 700);
      WorldPoint g;
      try {
        g = cam.BackprojectToGround(u, v);
      } catch (const Error&) {
        continue;
      }
      PixelPoint p = cam.Project(g);
      p.u += rng.Normal(0.0, 0.5);
      p.v += rng.Normal(0.0, 0.5);
      cs.push_back({g, p});
    }
    const auto est = CalibrateExtrinsics(cam.intrinsics(), cam.distortion(),
                                         cam.image_size(), cs);
    EXPECT_LE(est.rms_reprojection_px, 1.0) << "seed " << seed;
  }
}

}  // namespace
}  // namespace possense::mapping
