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

#ifndef POSSENSE_TRACKING_KALMAN_FILTER_H_
#define POSSENSE_TRACKING_KALMAN_FILTER_H_

#include <Eigen/Core>

#include "possense/model/types.h"

namespace possense::tracking {

using Vector4 = Eigen::Matrix<double, 4, 1>;
using Vector8 = Eigen::Matrix<double, 8, 1>;
using Matrix4 = Eigen::Matrix<double, 4, 4>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;
using Matrix48 = Eigen::Matrix<double, 4, 8>;

// Box center, aspect ratio (width / height), height, and their per-frame
// rates.
struct TrackState {
  double x_c = 0.0;
  double y_c = 0.0;
  double a = 1.0;
  double h = 1.0;
  double dx_c = 0.0;
  double dy_c = 0.0;
  double da = 0.0;
  double dh = 0.0;

  static TrackState FromVector(const Vector8& v);
  Vector8 ToVector() const;
  BBox ToBox() const;
};

// Standard deviations scale with the box height so gating behaves the same
// for near and far pedestrians. The aspect-ratio entries are absolute.
struct NoiseWeights {
  double position = 1.0 / 20.0;
  double velocity = 1.0 / 160.0;
  double process_aspect = 1e-2;
  double process_aspect_velocity = 1e-5;
  double measurement_position = 1.0 / 20.0;
  double measurement_aspect = 1e-1;
};

struct Gaussian8 {
  Vector8 mean;
  Matrix8 covariance;
};

// Measurement-space projection of a state distribution.
struct Projection {
  Vector4 mean;
  Matrix4 covariance;
};

// Constant-velocity model over (x_c, y_c, a, h) with one-frame time step.
class KalmanModel {
 public:
  explicit KalmanModel(const NoiseWeights& weights = {});

  const NoiseWeights& weights() const { return weights_; }
  static Matrix8 Transition();
  static Matrix48 Observation();

  Gaussian8 Initiate(const Vector4& measurement) const;
  // Applies `frames` single-frame predictions, each P <- F P F^T + Q.
  void Predict(Gaussian8& g, int frames) const;
  Projection Project(const Gaussian8& g) const;
  // Throws Error(kNumerical) if the innovation covariance is not positive
  // definite.
  void Update(Gaussian8& g, const Vector4& measurement) const;

  Matrix8 ProcessNoise(double height) const;
  Matrix4 MeasurementNoise(double height) const;

 private:
  NoiseWeights weights_;
};

// (x_c, y_c, a, h) of a box.
Vector4 MeasurementFromBox(const BBox& box);

}  // namespace possense::tracking

#endif  // POSSENSE_TRACKING_KALMAN_FILTER_H_
