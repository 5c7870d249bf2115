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

#include "possense/mapping/calibration.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "possense/model/errors.h"

namespace possense::mapping {

namespace {

constexpr int kMaxIterations = 100;

[[noreturn]] void Degenerate(const std::string& what) {
  throw Error(ErrorCode::kCalibration, what);
}

// Similarity transform moving the centroid to the origin and the mean
// distance to sqrt(2).
Eigen::Matrix3d NormalizingTransform(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double dist = 0.0;
  for (const auto& p : pts) dist += (p - mean).norm();
  dist /= static_cast<double>(pts.size());
  const double s = dist > 0.0 ? std::sqrt(2.0) / dist : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * mean.x(), 0, s, -s * mean.y(), 0, 0, 1;
  return t;
}

// Homography mapping ground (X, Y) to ideal normalized image coordinates.
Eigen::Matrix3d EstimateHomography(const std::vector<Eigen::Vector2d>& ground,
                                   const std::vector<Eigen::Vector2d>& image) {
  const Eigen::Matrix3d tg = NormalizingTransform(ground);
  const Eigen::Matrix3d ti = NormalizingTransform(image);
  const int n = static_cast<int>(ground.size());
  Eigen::MatrixXd a(2 * n, 9);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d g = tg * ground[i].homogeneous();
    const Eigen::Vector3d m = ti * image[i].homogeneous();
    a.row(2 * i) << -g.x(), -g.y(), -1, 0, 0, 0, m.x() * g.x(), m.x() * g.y(),
        m.x();
    a.row(2 * i + 1) << 0, 0, 0, -g.x(), -g.y(), -1, m.y() * g.x(),
        m.y() * g.y(), m.y();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  return ti.inverse() * hn * tg;
}

Eigen::Matrix3d NearestRotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0) u.col(2) *= -1.0;
  return u * v.transpose();
}

Eigen::VectorXd Residuals(const Intrinsics& in, const Distortion& dist,
                          const Eigen::Matrix3d& r, const Eigen::Vector3d& t,
                          std::span<const Correspondence> cs) {
  Eigen::VectorXd res(2 * cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& w = cs[i].world;
    const Eigen::Vector3d pc = r * Eigen::Vector3d(w.x, w.y, w.z) + t;
    if (!(pc.z() > 0.0)) {
      res(2 * i) = res(2 * i + 1) = 1e6;
      continue;
    }
    const Eigen::Vector2d d =
        dist.Apply(Eigen::Vector2d(pc.x() / pc.z(), pc.y() / pc.z()));
    res(2 * i) = in.fx * d.x() + in.cx - cs[i].pixel.u;
    res(2 * i + 1) = in.fy * d.y() + in.cy - cs[i].pixel.v;
  }
  return res;
}

struct Pose {
  Eigen::Matrix3d r;
  Eigen::Vector3d t;
};

Pose Perturb(const Pose& p, const Eigen::Matrix<double, 6, 1>& delta) {
  return {RotationFromAxisAngle(delta.head<3>()) * p.r, p.t + delta.tail<3>()};
}

}  // namespace

double ReprojectionRms(const CameraModel& camera,
                       std::span<const Correspondence> correspondences) {
  if (correspondences.empty()) return 0.0;
  const Eigen::VectorXd res =
      Residuals(camera.intrinsics(), camera.distortion(), camera.rotation(),
                camera.translation(), correspondences);
  return std::sqrt(res.squaredNorm() /
                   static_cast<double>(correspondences.size()));
}

ExtrinsicsEstimate CalibrateExtrinsics(
    const Intrinsics& intrinsics, const Distortion& distortion,
    const ImageSize& image, std::span<const Correspondence> correspondences) {
  // Validates intrinsics and image size up front.
  (void)CameraModel(intrinsics, distortion, Eigen::Matrix3d::Identity(),
                    Eigen::Vector3d(0, 0, 1), image);
  const std::size_t n = correspondences.size();
  if (n < 4) Degenerate("need at least 4 ground correspondences");

  std::vector<Eigen::Vector2d> ground, ideal;
  for (const auto& c : correspondences) {
    if (std::abs(c.world.z) > 1e-9) {
      Degenerate("calibration points must lie on the ground plane (z = 0)");
    }
    ground.emplace_back(c.world.x, c.world.y);
    ideal.push_back(distortion.Remove(
        Eigen::Vector2d((c.pixel.u - intrinsics.cx) / intrinsics.fx,
                        (c.pixel.v - intrinsics.cy) / intrinsics.fy)));
  }

  {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& g : ground) mean += g;
    mean /= static_cast<double>(n);
    Eigen::MatrixXd centered(n, 2);
    for (std::size_t i = 0; i < n; ++i) centered.row(i) = ground[i] - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    const auto sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(1) / sv(0) < 1e-9) {
      Degenerate("ground correspondences are collinear");
    }
  }

  const Eigen::Matrix3d h = EstimateHomography(ground, ideal);
  const double scale = 2.0 / (h.col(0).norm() + h.col(1).norm());
  Eigen::Vector3d r1 = scale * h.col(0);
  Eigen::Vector3d r2 = scale * h.col(1);
  Eigen::Vector3d t = scale * h.col(2);
  // The observed points, not the world origin, must end up in front.
  double depth = 0.0;
  for (const auto& g : ground) depth += (r1 * g.x() + r2 * g.y() + t).z();
  if (depth < 0.0) {
    r1 = -r1;
    r2 = -r2;
    t = -t;
  }
  Eigen::Matrix3d r0;
  r0.col(0) = r1;
  r0.col(1) = r2;
  r0.col(2) = r1.cross(r2);
  Pose pose{NearestRotation(r0), t};
  if (!pose.r.allFinite() || !pose.t.allFinite()) {
    Degenerate("homography decomposition failed");
  }

  Eigen::VectorXd res =
      Residuals(intrinsics, distortion, pose.r, pose.t, correspondences);
  double cost = res.squaredNorm();
  int iterations = 0;
  for (; iterations < kMaxIterations; ++iterations) {
    Eigen::MatrixXd jac(res.size(), 6);
    for (int k = 0; k < 6; ++k) {
      Eigen::Matrix<double, 6, 1> step = Eigen::Matrix<double, 6, 1>::Zero();
      const double eps = 1e-7 * (k < 3 ? 1.0 : std::max(1.0, pose.t.norm()));
      step(k) = eps;
      const Pose plus = Perturb(pose, step);
      const Pose minus = Perturb(pose, -step);
      jac.col(k) = (Residuals(intrinsics, distortion, plus.r, plus.t,
                              correspondences) -
                    Residuals(intrinsics, distortion, minus.r, minus.t,
                              correspondences)) /
                   (2.0 * eps);
    }
    const Eigen::Matrix<double, 6, 1> delta =
        (jac.transpose() * jac).ldlt().solve(-jac.transpose() * res);
    if (!delta.allFinite()) break;
    // Step halving keeps the iteration monotone.
    double alpha = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 20; ++halving) {
      const Pose trial = Perturb(pose, alpha * delta);
      const Eigen::VectorXd trial_res =
          Residuals(intrinsics, distortion, trial.r, trial.t, correspondences);
      const double trial_cost = trial_res.squaredNorm();
      if (trial_cost <= cost) {
        improved = trial_cost < cost;
        pose = trial;
        res = trial_res;
        cost = trial_cost;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved || (alpha * delta).norm() < 1e-14) {
      ++iterations;
      break;
    }
  }

  ExtrinsicsEstimate out;
  out.rotation = NearestRotation(pose.r);
  out.translation = pose.t;
  out.iterations = iterations;
  out.rms_reprojection_px = std::sqrt(cost / static_cast<double>(n));
  return out;
}

}  // namespace possense::mapping
