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

#ifndef POSSENSE_MAPPING_CAMERA_MODEL_H_
#define POSSENSE_MAPPING_CAMERA_MODEL_H_

#include <filesystem>
#include <iosfwd>

#include <Eigen/Core>

#include "json.hpp"
#include "possense/model/types.h"

namespace possense::mapping {

// Pinhole intrinsics with zero skew.
struct Intrinsics {
  double fx = 1000.0;
  double fy = 1000.0;
  double cx = 640.0;
  double cy = 360.0;
};

// Five-coefficient radial-tangential lens model (k1, k2, p1, p2, k3).
struct Distortion {
  double k1 = 0.0;
  double k2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double k3 = 0.0;

  bool is_zero() const {
    return k1 == 0.0 && k2 == 0.0 && p1 == 0.0 && p2 == 0.0 && k3 == 0.0;
  }
  // Distorted normalized coordinates of an ideal normalized point.
  Eigen::Vector2d Apply(const Eigen::Vector2d& ideal) const;
  // Inverse of Apply: fixed-point iteration (up to 20 rounds, 1e-10
  // tolerance) with a Newton polish if the iteration has not settled.
  Eigen::Vector2d Remove(const Eigen::Vector2d& distorted) const;
};

// Fixed monocular camera: world point M maps to pixel m' through
// s m' = A [R | t] M, with lens distortion applied to the normalized
// coordinates. The world Z axis points up and the ground is Z = 0.
class CameraModel {
 public:
  CameraModel() = default;
  // Throws Error(kInvalidArgument) unless R is a proper rotation (1e-9),
  // the focal lengths are positive and the principal point lies in the
  // image.
  CameraModel(const Intrinsics& intrinsics, const Distortion& distortion,
              const Eigen::Matrix3d& rotation,
              const Eigen::Vector3d& translation, const ImageSize& image);

  const Intrinsics& intrinsics() const { return intrinsics_; }
  const Distortion& distortion() const { return distortion_; }
  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  const ImageSize& image_size() const { return image_; }
  // Camera center in world coordinates.
  Eigen::Vector3d center() const { return -rotation_.transpose() * translation_; }

  // Throws Error(kBehindCamera) when the point has Z_c <= 0.
  PixelPoint Project(const WorldPoint& m) const;
  // Intersects the pixel's viewing ray with Z = 0. Throws
  // Error(kOutOfImage) for pixels outside the image and Error(kHorizon)
  // when the ray misses the ground in front of the camera.
  WorldPoint BackprojectToGround(double u, double v) const;

  bool Contains(double u, double v) const;

 private:
  Intrinsics intrinsics_;
  Distortion distortion_;
  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d(0, 0, 1);
  ImageSize image_{1280, 720};
};

Eigen::Matrix3d RotationFromAxisAngle(const Eigen::Vector3d& rvec);
Eigen::Vector3d AxisAngleFromRotation(const Eigen::Matrix3d& rotation);

// {"fx","fy","cx","cy","dist":[k1,k2,p1,p2,k3],"R":3x3 or axis-angle,
//  "t":[..],"image_size":[w,h]}
CameraModel CameraFromJson(const nlohmann::json& j);
nlohmann::json CameraToJson(const CameraModel& camera);
CameraModel LoadCameraModel(const std::filesystem::path& path);

// Pixel where the detection touches the ground: the lowest contour vertex
// (median u among ties) when a contour is present, else the bottom-center
// of the box.
PixelPoint GroundAnchorPixel(const Detection& det);
PixelPoint GroundAnchorPixel(const BBox& box,
                             const std::optional<std::vector<PixelPoint>>& contour);

}  // namespace possense::mapping

#endif  // POSSENSE_MAPPING_CAMERA_MODEL_H_
