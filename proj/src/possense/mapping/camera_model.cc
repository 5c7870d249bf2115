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

#include "possense/mapping/camera_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "possense/model/errors.h"

namespace possense::mapping {

namespace {

constexpr int kUndistortIterations = 20;
constexpr double kUndistortTolerance = 1e-10;

Eigen::Matrix2d DistortionJacobian(const Distortion& d,
                                   const Eigen::Vector2d& p) {
  const double x = p.x(), y = p.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
  const double dradial_dr2 = d.k1 + 2.0 * d.k2 * r2 + 3.0 * d.k3 * r2 * r2;
  Eigen::Matrix2d j;
  j(0, 0) = radial + x * dradial_dr2 * 2.0 * x + 2.0 * d.p1 * y +
            d.p2 * (2.0 * x + 4.0 * x);
  j(0, 1) = x * dradial_dr2 * 2.0 * y + 2.0 * d.p1 * x + d.p2 * 2.0 * y;
  j(1, 0) = y * dradial_dr2 * 2.0 * x + d.p1 * 2.0 * x + 2.0 * d.p2 * y;
  j(1, 1) = radial + y * dradial_dr2 * 2.0 * y + d.p1 * (2.0 * y + 4.0 * y) +
            2.0 * d.p2 * x;
  return j;
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

Eigen::Vector2d Distortion::Apply(const Eigen::Vector2d& ideal) const {
  const double x = ideal.x(), y = ideal.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
  return {x * radial + 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x),
          y * radial + p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y};
}

Eigen::Vector2d Distortion::Remove(const Eigen::Vector2d& distorted) const {
  if (is_zero()) return distorted;
  Eigen::Vector2d p = distorted;
  bool settled = false;
  for (int it = 0; it < kUndistortIterations; ++it) {
    const double x = p.x(), y = p.y();
    const double r2 = x * x + y * y;
    const double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
    const double dx = 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x);
    const double dy = p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y;
    const Eigen::Vector2d next((distorted.x() - dx) / radial,
                               (distorted.y() - dy) / radial);
    const double step = (next - p).norm();
    p = next;
    if (step < kUndistortTolerance) {
      settled = true;
      break;
    }
  }
  if (!settled) {
    for (int it = 0; it < 10; ++it) {
      const Eigen::Vector2d r = Apply(p) - distorted;
      if (r.norm() < 1e-15) break;
      p -= DistortionJacobian(*this, p).lu().solve(r);
    }
  }
  return p;
}

CameraModel::CameraModel(const Intrinsics& intrinsics,
                         const Distortion& distortion,
                         const Eigen::Matrix3d& rotation,
                         const Eigen::Vector3d& translation,
                         const ImageSize& image)
    : intrinsics_(intrinsics),
      distortion_(distortion),
      rotation_(rotation),
      translation_(translation),
      image_(image) {
  Require(intrinsics.fx > 0.0 && intrinsics.fy > 0.0,
          "focal lengths must be positive");
  Require(image.width > 0 && image.height > 0, "image size must be positive");
  Require(intrinsics.cx >= 0.0 && intrinsics.cx <= image.width &&
              intrinsics.cy >= 0.0 && intrinsics.cy <= image.height,
          "principal point must lie inside the image");
  const double ortho =
      (rotation * rotation.transpose() - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  Require(ortho < 1e-9 && std::abs(rotation.determinant() - 1.0) < 1e-9,
          "R must be orthonormal with det(R) = +1");
  Require(translation.allFinite(), "t must be finite");
}

bool CameraModel::Contains(double u, double v) const {
  return u >= 0.0 && u <= image_.width && v >= 0.0 && v <= image_.height;
}

PixelPoint CameraModel::Project(const WorldPoint& m) const {
  const Eigen::Vector3d pc =
      rotation_ * Eigen::Vector3d(m.x, m.y, m.z) + translation_;
  if (!(pc.z() > 0.0)) {
    throw Error(ErrorCode::kBehindCamera, "point is behind the camera");
  }
  const Eigen::Vector2d d =
      distortion_.Apply(Eigen::Vector2d(pc.x() / pc.z(), pc.y() / pc.z()));
  return {intrinsics_.fx * d.x() + intrinsics_.cx,
          intrinsics_.fy * d.y() + intrinsics_.cy};
}

WorldPoint CameraModel::BackprojectToGround(double u, double v) const {
  if (!Contains(u, v)) {
    throw Error(ErrorCode::kOutOfImage, "pixel outside the image");
  }
  const Eigen::Vector2d ideal = distortion_.Remove(
      Eigen::Vector2d((u - intrinsics_.cx) / intrinsics_.fx,
                      (v - intrinsics_.cy) / intrinsics_.fy));
  const Eigen::Vector3d ray =
      rotation_.transpose() * Eigen::Vector3d(ideal.x(), ideal.y(), 1.0);
  const Eigen::Vector3d c = center();
  if (std::abs(ray.z()) <= 1e-12 * ray.norm()) {
    throw Error(ErrorCode::kHorizon, "viewing ray is parallel to the ground");
  }
  const double lambda = -c.z() / ray.z();
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kHorizon,
                "viewing ray meets the ground behind the camera");
  }
  const Eigen::Vector3d p = c + lambda * ray;
  return {p.x(), p.y(), 0.0};
}

Eigen::Matrix3d RotationFromAxisAngle(const Eigen::Vector3d& rvec) {
  const double angle = rvec.norm();
  if (angle < 1e-15) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, rvec / angle).toRotationMatrix();
}

Eigen::Vector3d AxisAngleFromRotation(const Eigen::Matrix3d& rotation) {
  const Eigen::AngleAxisd aa(rotation);
  return aa.angle() * aa.axis();
}

CameraModel CameraFromJson(const nlohmann::json& j) {
  try {
    Intrinsics in{j.at("fx").get<double>(), j.at("fy").get<double>(),
                  j.at("cx").get<double>(), j.at("cy").get<double>()};
    Distortion dist;
    if (j.contains("dist")) {
      const auto& d = j.at("dist");
      if (!d.is_array() || d.size() != 5) {
        throw Error(ErrorCode::kParse, "dist must hold [k1,k2,p1,p2,k3]");
      }
      dist = {d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
              d[3].get<double>(), d[4].get<double>()};
    }
    Eigen::Matrix3d r;
    const auto& rj = j.at("R");
    if (rj.size() == 3 && rj[0].is_number()) {
      r = RotationFromAxisAngle(Eigen::Vector3d(
          rj[0].get<double>(), rj[1].get<double>(), rj[2].get<double>()));
    } else if (rj.size() == 3) {
      for (int a = 0; a < 3; ++a) {
        if (rj[a].size() != 3) throw Error(ErrorCode::kParse, "R must be 3x3");
        for (int b = 0; b < 3; ++b) r(a, b) = rj[a][b].get<double>();
      }
    } else {
      throw Error(ErrorCode::kParse, "R must be 3x3 or an axis-angle 3-vector");
    }
    const auto& tj = j.at("t");
    if (tj.size() != 3) throw Error(ErrorCode::kParse, "t must have 3 entries");
    const Eigen::Vector3d t(tj[0].get<double>(), tj[1].get<double>(),
                            tj[2].get<double>());
    const auto& sj = j.at("image_size");
    if (sj.size() != 2) {
      throw Error(ErrorCode::kParse, "image_size must be [width, height]");
    }
    return CameraModel(in, dist, r, t, {sj[0].get<int>(), sj[1].get<int>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("calibration file: ") + e.what());
  }
}

nlohmann::json CameraToJson(const CameraModel& camera) {
  const auto& in = camera.intrinsics();
  const auto& d = camera.distortion();
  nlohmann::ordered_json j;
  j["fx"] = in.fx;
  j["fy"] = in.fy;
  j["cx"] = in.cx;
  j["cy"] = in.cy;
  j["dist"] = {d.k1, d.k2, d.p1, d.p2, d.k3};
  j["R"] = nlohmann::ordered_json::array();
  for (int a = 0; a < 3; ++a) {
    j["R"].push_back({camera.rotation()(a, 0), camera.rotation()(a, 1),
                      camera.rotation()(a, 2)});
  }
  j["t"] = {camera.translation().x(), camera.translation().y(),
            camera.translation().z()};
  j["image_size"] = {camera.image_size().width, camera.image_size().height};
  return j;
}

CameraModel LoadCameraModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return CameraFromJson(j);
}

PixelPoint GroundAnchorPixel(
    const BBox& box, const std::optional<std::vector<PixelPoint>>& contour) {
  if (!contour || contour->empty()) {
    return {box.left + 0.5 * box.width, box.top + box.height};
  }
  double v_max = contour->front().v;
  for (const auto& p : *contour) v_max = std::max(v_max, p.v);
  std::vector<double> us;
  for (const auto& p : *contour) {
    if (p.v == v_max) us.push_back(p.u);
  }
  std::sort(us.begin(), us.end());
  const std::size_t n = us.size();
  const double median =
      n % 2 == 1 ? us[n / 2] : 0.5 * (us[n / 2 - 1] + us[n / 2]);
  return {median, v_max};
}

PixelPoint GroundAnchorPixel(const Detection& det) {
  return GroundAnchorPixel(det.bbox, det.contour);
}

}  // namespace possense::mapping
