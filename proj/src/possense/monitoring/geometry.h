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

#ifndef POSSENSE_MONITORING_GEOMETRY_H_
#define POSSENSE_MONITORING_GEOMETRY_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace possense::monitoring {

// Largest pairwise ground distance; 0 for fewer than two points.
double GroupDiameter(std::span<const Eigen::Vector2d> points);

enum class DistanceMode { kMinPair, kHausdorff };
std::string DistanceModeName(DistanceMode m);
DistanceMode ParseDistanceMode(const std::string& text);

// Both sets must be non-empty.
double InterGroupDistance(std::span<const Eigen::Vector2d> a,
                          std::span<const Eigen::Vector2d> b,
                          DistanceMode mode);

using Polygon = std::vector<Eigen::Vector2d>;

// Even-odd rule; points on an edge count as inside.
bool PointInPolygon(const Eigen::Vector2d& p, const Polygon& poly);
double DistanceToBoundary(const Eigen::Vector2d& p, const Polygon& poly);
// At least three vertices and no two non-adjacent edges touching.
bool IsSimplePolygon(const Polygon& poly);

}  // namespace possense::monitoring

#endif  // POSSENSE_MONITORING_GEOMETRY_H_
