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

#include "possense/grouping/path_convergence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

constexpr std::int64_t kKeyStride = std::int64_t{1} << 32;

std::int64_t CellKey(std::int64_t cx, std::int64_t cy) {
  return cx * kKeyStride + cy;
}

}  // namespace

std::vector<Eigen::Vector2d> ExtrapolatedPath(
    const std::vector<WindowSample>& samples, double window_end) {
  std::vector<Eigen::Vector2d> path;
  if (samples.empty()) return path;
  for (const auto& s : samples) path.push_back(s.position);
  std::vector<double> gaps;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    gaps.push_back(samples[k].t - samples[k - 1].t);
  }
  if (gaps.empty()) return path;
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  const double dt = gaps[gaps.size() / 2];
  if (!(dt > 0.0)) return path;
  const WindowSample& last = samples.back();
  for (double t = last.t + dt; t <= window_end + 1e-9; t += dt) {
    path.push_back(last.position + last.velocity * (t - last.t));
  }
  return path;
}

HeatGrid WindowGrid(const TrajectoryWindow& win, double resolution,
                    double pad_m) {
  if (!(resolution > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be > 0");
  }
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(
      std::numeric_limits<double>::infinity());
  for (const auto& [id, samples] : win.members) {
    for (const auto& p : ExtrapolatedPath(samples, win.end)) {
      lo = lo.cwiseMin(p);
    }
  }
  HeatGrid grid;
  grid.resolution = resolution;
  grid.origin = lo.allFinite() ? Eigen::Vector2d(lo.array() - pad_m)
                               : Eigen::Vector2d::Zero();
  return grid;
}

HeatMap Rasterize(const std::vector<Eigen::Vector2d>& path,
                  const HeatGrid& grid) {
  const double res = grid.resolution;
  const double inv2s2 = 1.0 / (2.0 * res * res);
  const double cutoff2 = 9.0 * res * res;  // 3 sigma
  const int reach = 4;
  std::map<std::int64_t, double> acc;
  for (const auto& p : path) {
    const Eigen::Vector2d q = (p - grid.origin) / res;
    const auto cx = static_cast<std::int64_t>(std::floor(q.x()));
    const auto cy = static_cast<std::int64_t>(std::floor(q.y()));
    for (std::int64_t ix = cx - reach; ix <= cx + reach; ++ix) {
      for (std::int64_t iy = cy - reach; iy <= cy + reach; ++iy) {
        const Eigen::Vector2d center(
            grid.origin.x() + (static_cast<double>(ix) + 0.5) * res,
            grid.origin.y() + (static_cast<double>(iy) + 0.5) * res);
        const double d2 = (center - p).squaredNorm();
        if (d2 > cutoff2) continue;
        acc[CellKey(ix, iy)] += std::exp(-d2 * inv2s2);
      }
    }
  }
  return HeatMap(acc.begin(), acc.end());
}

double HeatMapSimilarity(const HeatMap& a, const HeatMap& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) na += v * v;
  for (const auto& [k, v] : b) nb += v * v;
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  // Merge walk over sorted keys keeps the summation order independent of
  // argument order.
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double PathConvergenceF4(const TrajectoryWindow& win, int i, int j,
                         double grid_res, double pad_m) {
  if (CoOccurring(win, i, j).size() < 2) return 0.0;
  const HeatGrid grid = WindowGrid(win, grid_res, pad_m);
  const HeatMap a =
      Rasterize(ExtrapolatedPath(win.members.at(i), win.end), grid);
  const HeatMap b =
      Rasterize(ExtrapolatedPath(win.members.at(j), win.end), grid);
  return HeatMapSimilarity(a, b);
}

}  // namespace possense::grouping
