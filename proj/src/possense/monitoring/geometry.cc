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

#include "possense/monitoring/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "possense/model/errors.h"

namespace possense::monitoring {

namespace {

double SegmentDistance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                       const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

double Cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
             const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool OnSegment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
               const Eigen::Vector2d& b) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool SegmentsTouch(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                   const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const double d1 = Cross(q1, q2, p1);
  const double d2 = Cross(q1, q2, p2);
  const double d3 = Cross(p1, p2, q1);
  const double d4 = Cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && OnSegment(p1, q1, q2)) ||
         (d2 == 0 && OnSegment(p2, q1, q2)) ||
         (d3 == 0 && OnSegment(q1, p1, p2)) ||
         (d4 == 0 && OnSegment(q2, p1, p2));
}

}  // namespace

double GroupDiameter(std::span<const Eigen::Vector2d> points) {
  double d = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      d = std::max(d, (points[a] - points[b]).norm());
    }
  }
  return d;
}

std::string DistanceModeName(DistanceMode m) {
  return m == DistanceMode::kHausdorff ? "hausdorff" : "min_pair";
}

DistanceMode ParseDistanceMode(const std::string& text) {
  if (text == "min_pair") return DistanceMode::kMinPair;
  if (text == "hausdorff") return DistanceMode::kHausdorff;
  throw Error(ErrorCode::kConfig,
              "monitoring.distance_mode must be 'min_pair' or 'hausdorff'");
}

double InterGroupDistance(std::span<const Eigen::Vector2d> a,
                          std::span<const Eigen::Vector2d> b,
                          DistanceMode mode) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "inter-group distance needs non-empty groups");
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (mode == DistanceMode::kMinPair) {
    double best = inf;
    for (const auto& p : a) {
      for (const auto& q : b) best = std::min(best, (p - q).norm());
    }
    return best;
  }
  auto directed = [&](std::span<const Eigen::Vector2d> from,
                      std::span<const Eigen::Vector2d> to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double nearest = inf;
      for (const auto& q : to) nearest = std::min(nearest, (p - q).norm());
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

bool PointInPolygon(const Eigen::Vector2d& p, const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if (SegmentDistance(p, a, b) == 0.0) return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

double DistanceToBoundary(const Eigen::Vector2d& p, const Polygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, SegmentDistance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

bool IsSimplePolygon(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (SegmentsTouch(poly[i], poly[(i + 1) % n], poly[j],
                        poly[(j + 1) % n])) {
        return false;
      }
    }
  }
  // Zero-area polygons are rejected too.
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  return std::abs(area2) > 0.0;
}

}  // namespace possense::monitoring
