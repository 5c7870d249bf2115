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

#ifndef POSSENSE_TRACKING_DISTANCES_H_
#define POSSENSE_TRACKING_DISTANCES_H_

#include <deque>
#include <optional>

#include "possense/model/types.h"
#include "possense/tracking/kalman_filter.h"

namespace possense::tracking {

// Cost value that marks an inadmissible association.
inline constexpr double kInfeasibleCost = 1e5;

// r^T S^-1 r. Throws Error(kNumerical) when `covariance` is singular.
double MahalanobisSquared(const Vector4& residual, const Matrix4& covariance);

// Squared Mahalanobis distance between a detection and the measurement-space
// projection of a state distribution.
double MotionDistance(const Projection& projection, const BBox& detection);

// min over the gallery of 1 - r_det . r_l. nullopt when either side has no
// appearance data, which tells the caller to fall back to motion only.
std::optional<double> AppearanceDistance(const std::deque<Appearance>& gallery,
                                         const std::optional<Appearance>& det);

struct Gates {
  // 95% quantile of chi-square with 4 degrees of freedom.
  double chi2 = 9.4877;
  double appearance = 0.2;
};

struct AssociationCost {
  double d_mot = 0.0;
  std::optional<double> d_app;
  double d_comb = 0.0;
  bool motion_ok = false;
  bool appearance_ok = false;
};

// d_comb = lambda*d_mot + (1-lambda)*d_app when both gates pass, otherwise
// kInfeasibleCost. Without appearance data the cost is d_mot under the
// motion gate alone.
AssociationCost CombinedCost(double d_mot, std::optional<double> d_app,
                             double lambda_mix, const Gates& gates);

double Iou(const BBox& a, const BBox& b);

}  // namespace possense::tracking

#endif  // POSSENSE_TRACKING_DISTANCES_H_
