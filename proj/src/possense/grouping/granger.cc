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

#include "possense/grouping/granger.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

constexpr double kFCap = 1e12;

struct Fit {
  double rss = 0.0;
  bool full_rank = false;
};

Fit LeastSquares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  Fit fit;
  fit.full_rank = qr.rank() == x.cols();
  if (!fit.full_rank) return fit;
  const Eigen::VectorXd beta = qr.solve(y);
  fit.rss = (y - x * beta).squaredNorm();
  return fit;
}

}  // namespace

int GrangerMinFrames(int order) { return 3 * order + 3; }

GrangerTest GrangerF(std::span<const Eigen::Vector2d> cause,
                     std::span<const Eigen::Vector2d> effect, int order) {
  if (order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "Granger order must be >= 1");
  }
  if (cause.size() != effect.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "Granger inputs must be aligned");
  }
  GrangerTest test;
  const int n = static_cast<int>(cause.size());
  if (n < GrangerMinFrames(order)) return test;
  const int m = n - 1;          // increments
  const int rows = m - order;   // usable equations
  const int dof_axis = rows - 2 * order - 1;

  double rss_r = 0.0, rss_u = 0.0;
  int axes = 0;
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> dx(m), dy(m);
    for (int k = 0; k < m; ++k) {
      dx[k] = cause[k + 1](axis) - cause[k](axis);
      dy[k] = effect[k + 1](axis) - effect[k](axis);
    }
    Eigen::MatrixXd xr(rows, 1 + order), xu(rows, 1 + 2 * order);
    Eigen::VectorXd y(rows);
    for (int r = 0; r < rows; ++r) {
      const int t = r + order;
      y(r) = dy[t];
      xr(r, 0) = xu(r, 0) = 1.0;
      for (int l = 1; l <= order; ++l) {
        xr(r, l) = xu(r, l) = dy[t - l];
        xu(r, order + l) = dx[t - l];
      }
    }
    const Fit u = LeastSquares(xu, y);
    if (!u.full_rank) continue;
    const Fit r = LeastSquares(xr, y);
    rss_u += u.rss;
    rss_r += std::max(r.rss, u.rss);
    ++axes;
  }
  if (axes == 0) return test;
  test.degenerate = false;
  test.dof_num = axes * order;
  test.dof_den = axes * dof_axis;
  const double gain = std::max(0.0, rss_r - rss_u);
  if (!(rss_u > 0.0)) {
    test.f = gain > 0.0 ? kFCap : 0.0;
    return test;
  }
  test.f = std::min(kFCap, (gain / test.dof_num) / (rss_u / test.dof_den));
  return test;
}

GrangerResult GrangerScore(std::span<const Eigen::Vector2d> a,
                           std::span<const Eigen::Vector2d> b, int order) {
  GrangerResult out;
  out.ij = GrangerF(a, b, order);
  out.ji = GrangerF(b, a, order);
  out.degenerate = out.ij.degenerate && out.ji.degenerate;
  if (out.degenerate) return out;
  out.score = std::log1p(std::max(out.ij.f, out.ji.f));
  return out;
}

GrangerResult GrangerF3(const TrajectoryWindow& win, int i, int j,
                        int order) {
  const CoOccurrence co = CoOccurring(win, i, j);
  std::vector<Eigen::Vector2d> a, b;
  a.reserve(co.size());
  b.reserve(co.size());
  for (std::size_t k = 0; k < co.size(); ++k) {
    a.push_back(co.a[k]->position);
    b.push_back(co.b[k]->position);
  }
  return GrangerScore(a, b, order);
}

}  // namespace possense::grouping
