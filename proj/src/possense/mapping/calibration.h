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

#ifndef POSSENSE_MAPPING_CALIBRATION_H_
#define POSSENSE_MAPPING_CALIBRATION_H_

#include <span>

#include <Eigen/Core>

#include "possense/mapping/camera_model.h"

namespace possense::mapping {

struct Correspondence {
  WorldPoint world;  // on the ground plane, z == 0
  PixelPoint pixel;
};

struct ExtrinsicsEstimate {
  Eigen::Matrix3d rotation;
  Eigen::Vector3d translation;
  // sqrt(mean squared pixel distance) over the correspondences.
  double rms_reprojection_px = 0.0;
  int iterations = 0;
};

// Planar pose from >= 4 non-collinear ground correspondences: normalized DLT
// homography, decomposition into [r1 r2 t], then Gauss-Newton on the pixel
// reprojection error (at most 100 iterations). Throws Error(kCalibration)
// for degenerate configurations.
ExtrinsicsEstimate CalibrateExtrinsics(
    const Intrinsics& intrinsics, const Distortion& distortion,
    const ImageSize& image, std::span<const Correspondence> correspondences);

// Root-mean-square reprojection error of a pose.
double ReprojectionRms(const CameraModel& camera,
                       std::span<const Correspondence> correspondences);

}  // namespace possense::mapping

#endif  // POSSENSE_MAPPING_CALIBRATION_H_
