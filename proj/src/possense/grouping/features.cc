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

#include "possense/grouping/features.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

double MinMax(double x, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

std::vector<Eigen::Vector2d> Positions(const TrajectoryWindow& win, int id) {
  std::vector<Eigen::Vector2d> out;
  const auto it = win.members.find(id);
  if (it == win.members.end()) return out;
  for (const auto& s : it->second) out.push_back(s.position);
  return out;
}

}  // namespace

std::optional<double> FrameFeature(const Eigen::Vector2d& si,
                                   const Eigen::Vector2d& sj,
                                   const Eigen::Vector2d& vi,
                                   const Eigen::Vector2d& vj,
                                   const FrameFeatureBounds& bounds,
                                   double lambda_loc, double tau_s,
                                   double tau_v) {
  const double d2 = (si - sj).squaredNorm();
  const double v2 = (vi - vj).squaredNorm();
  if (d2 > tau_s * tau_s || v2 > tau_v * tau_v) return std::nullopt;
  return lambda_loc * MinMax(d2, bounds.dist2_min, bounds.dist2_max) +
         (1.0 - lambda_loc) * MinMax(v2, bounds.vel2_min, bounds.vel2_max);
}

double ProxemicsGmm(const Eigen::Vector2d& si, const Eigen::Vector2d& sj) {
  const Eigen::Vector2d d = si - sj;
  const double r2 = d.squaredNorm();
  double sum = 0.0;
  for (const double sigma : kProxemicSigmas) {
    const double var = sigma * sigma;
    sum += std::exp(-0.5 * r2 / var) / (2.0 * std::numbers::pi * var);
  }
  return sum / 3.0;
}

std::optional<double> ProxemicsF1(const TrajectoryWindow& win, int i, int j) {
  const CoOccurrence co = CoOccurring(win, i, j);
  if (co.size() == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t k = 0; k < co.size(); ++k) {
    sum += ProxemicsGmm(co.a[k]->position, co.b[k]->position);
  }
  return sum / static_cast<double>(co.size());
}

DtwResult DtwDistance(std::span<const Eigen::Vector2d> a,
                      std::span<const Eigen::Vector2d> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "DTW needs non-empty sequences");
  }
  const double inf = std::numeric_limits<double>::infinity();
  // Two rolling rows of the cumulative cost table.
  std::vector<double> prev(n, inf), cur(n, inf);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double d = (a[r] - b[c]).squaredNorm();
      double best;
      if (r == 0 && c == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (r > 0) best = std::min(best, prev[c]);
        if (c > 0) best = std::min(best, cur[c - 1]);
        if (r > 0 && c > 0) best = std::min(best, prev[c - 1]);
      }
      cur[c] = d + best;
    }
    std::swap(prev, cur);
  }
  DtwResult out;
  out.gamma = prev[n - 1];
  out.f2 = out.gamma / static_cast<double>(std::max(m, n));
  return out;
}

DtwResult DtwF2(const TrajectoryWindow& win, int i, int j) {
  const auto a = Positions(win, i);
  const auto b = Positions(win, j);
  return DtwDistance(a, b);
}

}  // namespace possense::grouping
