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

#ifndef POSSENSE_MODEL_DETECTION_IO_H_
#define POSSENSE_MODEL_DETECTION_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "possense/model/types.h"

namespace possense {

enum class DetectionFormat {
  // frame,id,left,top,width,height,conf,x,y,z
  kMotText,
  // {"frame":..,"bbox":[l,t,w,h],"class":..,"conf":..,"contour":..|null}
  kJsonLines,
};

// Picks kJsonLines for .jsonl/.json files, kMotText otherwise.
DetectionFormat GuessDetectionFormat(const std::filesystem::path& path);

struct DetectionParseOptions {
  // When set, boxes are clamped to this extent and clamping is recorded.
  std::optional<ImageSize> image;
  // Appearance sidecar: little-endian float32, 128 per record, in the same
  // record order as the detection file.
  std::optional<std::filesystem::path> sidecar;
};

struct DetectionFile {
  std::vector<FrameDetections> frames;
  // Non-fatal ingestion notes (clamped confidences, unknown classes, ...).
  std::vector<std::string> warnings;

  std::size_t detection_count() const;
};

// Parses a detection stream. Records must come in non-decreasing frame
// order; inside a frame the output is sorted by `left`. Malformed records
// throw ParseError carrying the 1-based line number.
DetectionFile ParseDetections(std::istream& in, DetectionFormat format,
                              const DetectionParseOptions& options = {},
                              std::istream* sidecar = nullptr);

DetectionFile ReadDetectionFile(const std::filesystem::path& path,
                                DetectionFormat format,
                                const DetectionParseOptions& options = {});

// Reads every 128-float record of a sidecar stream.
std::vector<Appearance> ReadAppearanceSidecar(std::istream& in);
void WriteAppearanceSidecar(std::ostream& out,
                            const std::vector<Appearance>& records);

void WriteDetections(std::ostream& out,
                     const std::vector<FrameDetections>& frames,
                     DetectionFormat format);

// One MOT text line without trailing newline.
std::string FormatMotLine(int frame, int id, const BBox& box,
                          double confidence);

// Flattens frames into a single list, preserving order.
std::vector<Detection> Flatten(const std::vector<FrameDetections>& frames);

}  // namespace possense

#endif  // POSSENSE_MODEL_DETECTION_IO_H_
