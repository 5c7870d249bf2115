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

#include "possense/tracking/distances.h"

#include <algorithm>
#include <limits>

#include <Eigen/Cholesky>

#include "possense/model/errors.h"

namespace possense::tracking {

double MahalanobisSquared(const Vector4& residual, const Matrix4& covariance) {
  Eigen::LLT<Matrix4> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical,
                "singular projected covariance (degenerate track)");
  }
  const Vector4 z = llt.matrixL().solve(residual);
  return z.squaredNorm();
}

double MotionDistance(const Projection& projection, const BBox& detection) {
  return MahalanobisSquared(MeasurementFromBox(detection) - projection.mean,
                            projection.covariance);
}

std::optional<double> AppearanceDistance(const std::deque<Appearance>& gallery,
                                         const std::optional<Appearance>& det) {
  if (!det || gallery.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : gallery) {
    double dot = 0.0;
    const std::size_t n = std::min(r.size(), det->size());
    for (std::size_t k = 0; k < n; ++k) {
      dot += static_cast<double>(r[k]) * (*det)[k];
    }
    best = std::min(best, 1.0 - dot);
  }
  return std::clamp(best, 0.0, 2.0);
}

AssociationCost CombinedCost(double d_mot, std::optional<double> d_app,
                             double lambda_mix, const Gates& gates) {
  AssociationCost c;
  c.d_mot = d_mot;
  c.d_app = d_app;
  c.motion_ok = d_mot <= gates.chi2;
  if (!d_app) {
    c.appearance_ok = true;
    c.d_comb = c.motion_ok ? d_mot : kInfeasibleCost;
    return c;
  }
  c.appearance_ok = *d_app <= gates.appearance;
  c.d_comb = (c.motion_ok && c.appearance_ok)
                 ? lambda_mix * d_mot + (1.0 - lambda_mix) * *d_app
                 : kInfeasibleCost;
  return c;
}

double Iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top, b.top);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace possense::tracking
