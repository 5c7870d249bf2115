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

#include "possense/tracking/kalman_filter.h"

#include <Eigen/Cholesky>

#include "possense/model/errors.h"

namespace possense::tracking {

TrackState TrackState::FromVector(const Vector8& v) {
  return {v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7)};
}

Vector8 TrackState::ToVector() const {
  Vector8 v;
  v << x_c, y_c, a, h, dx_c, dy_c, da, dh;
  return v;
}

BBox TrackState::ToBox() const {
  const double w = a * h;
  return {x_c - 0.5 * w, y_c - 0.5 * h, w, h};
}

Vector4 MeasurementFromBox(const BBox& box) {
  Vector4 z;
  z << box.center_x(), box.center_y(), box.width / box.height, box.height;
  return z;
}

KalmanModel::KalmanModel(const NoiseWeights& weights) : weights_(weights) {}

Matrix8 KalmanModel::Transition() {
  Matrix8 f = Matrix8::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

Matrix48 KalmanModel::Observation() {
  Matrix48 c = Matrix48::Zero();
  c.leftCols<4>().setIdentity();
  return c;
}

Matrix8 KalmanModel::ProcessNoise(double height) const {
  const double p = weights_.position * height;
  const double v = weights_.velocity * height;
  Vector8 std;
  std << p, p, weights_.process_aspect, p, v, v,
      weights_.process_aspect_velocity, v;
  return std.array().square().matrix().asDiagonal();
}

Matrix4 KalmanModel::MeasurementNoise(double height) const {
  const double p = weights_.measurement_position * height;
  Vector4 std;
  std << p, p, weights_.measurement_aspect, p;
  return std.array().square().matrix().asDiagonal();
}

Gaussian8 KalmanModel::Initiate(const Vector4& measurement) const {
  Gaussian8 g;
  g.mean.head<4>() = measurement;
  g.mean.tail<4>().setZero();
  const double h = measurement(3);
  const double p = 2.0 * weights_.position * h;
  const double v = 10.0 * weights_.velocity * h;
  Vector8 std;
  std << p, p, 1e-2, p, v, v, 1e-5, v;
  g.covariance = std.array().square().matrix().asDiagonal();
  return g;
}

void KalmanModel::Predict(Gaussian8& g, int frames) const {
  const Matrix8 f = Transition();
  for (int k = 0; k < frames; ++k) {
    const Matrix8 q = ProcessNoise(g.mean(3));
    g.mean = f * g.mean;
    g.covariance = f * g.covariance * f.transpose() + q;
    g.covariance = 0.5 * (g.covariance + g.covariance.transpose());
  }
}

Projection KalmanModel::Project(const Gaussian8& g) const {
  const Matrix48 c = Observation();
  Projection p;
  p.mean = c * g.mean;
  p.covariance = c * g.covariance * c.transpose() +
                 MeasurementNoise(g.mean(3));
  return p;
}

void KalmanModel::Update(Gaussian8& g, const Vector4& measurement) const {
  const Projection proj = Project(g);
  Eigen::LLT<Matrix4> llt(proj.covariance);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical,
                "innovation covariance is not positive definite; check the "
                "noise configuration");
  }
  const Matrix48 c = Observation();
  // K = P C^T S^-1, computed as (S^-1 C P)^T.
  const Eigen::Matrix<double, 8, 4> pct = g.covariance * c.transpose();
  const Eigen::Matrix<double, 8, 4> gain =
      llt.solve(pct.transpose()).transpose();
  g.mean += gain * (measurement - proj.mean);
  g.covariance -= gain * proj.covariance * gain.transpose();
  g.covariance = 0.5 * (g.covariance + g.covariance.transpose());
}

}  // namespace possense::tracking
