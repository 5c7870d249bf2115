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

#include "possense/model/detection_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense {

namespace {

using nlohmann::json;

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool IsSkippable(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

double CheckedConfidence(double conf, int line,
                         std::vector<std::string>& warnings) {
  if (conf >= 0.0 && conf <= 1.0) return conf;
  const double clamped = std::clamp(conf, 0.0, 1.0);
  warnings.push_back("line " + std::to_string(line) + ": confidence " +
                     FormatDouble(conf) + " clamped to " +
                     FormatDouble(clamped));
  return clamped;
}

Detection ParseMotRecord(std::string_view line, int line_no,
                         std::vector<std::string>& warnings) {
  const auto fields = SplitFields(line);
  if (fields.size() < 6 || fields.size() > 10) {
    throw ParseError("expected 6 to 10 comma-separated fields, got " +
                         std::to_string(fields.size()),
                     line_no);
  }
  Detection det;
  det.frame_index = static_cast<int>(ParseInt(fields[0], line_no));
  det.id = static_cast<int>(ParseInt(fields[1], line_no));
  det.bbox.left = ParseDouble(fields[2], line_no);
  det.bbox.top = ParseDouble(fields[3], line_no);
  det.bbox.width = ParseDouble(fields[4], line_no);
  det.bbox.height = ParseDouble(fields[5], line_no);
  det.confidence = fields.size() > 6
                       ? CheckedConfidence(ParseDouble(fields[6], line_no),
                                           line_no, warnings)
                       : 1.0;
  return det;
}

std::vector<float> JsonFloatVector(const json& j, int line_no) {
  if (!j.is_array()) throw ParseError("appearance must be an array", line_no);
  std::vector<float> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError("appearance entry not a number", line_no);
    out.push_back(x.get<float>());
  }
  return out;
}

Detection ParseJsonRecord(std::string_view line, int line_no,
                          std::vector<std::string>& warnings) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw ParseError("record is not an object", line_no);
  Detection det;
  try {
    if (!j.contains("frame") || !j.contains("bbox")) {
      throw ParseError("record needs 'frame' and 'bbox'", line_no);
    }
    det.frame_index = j.at("frame").get<int>();
    const auto& b = j.at("bbox");
    if (!b.is_array() || b.size() != 4) {
      throw ParseError("bbox must be [left, top, width, height]", line_no);
    }
    det.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                b[3].get<double>()};
    if (j.contains("id") && !j["id"].is_null()) det.id = j["id"].get<int>();
    if (j.contains("class") && !j["class"].is_null()) {
      const auto name = j["class"].get<std::string>();
      if (auto label = ParseClassLabel(name)) {
        det.class_label = *label;
      } else {
        det.class_label = ClassLabel::kPeopleOther;
        warnings.push_back("line " + std::to_string(line_no) +
                           ": unknown class '" + name +
                           "' mapped to people_other");
      }
    }
    det.confidence =
        j.contains("conf") && !j["conf"].is_null()
            ? CheckedConfidence(j["conf"].get<double>(), line_no, warnings)
            : 1.0;
    if (j.contains("contour") && !j["contour"].is_null()) {
      std::vector<PixelPoint> contour;
      for (const auto& p : j["contour"]) {
        if (!p.is_array() || p.size() != 2) {
          throw ParseError("contour vertices must be [u, v]", line_no);
        }
        contour.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      if (contour.empty()) throw ParseError("empty contour", line_no);
      det.contour = std::move(contour);
    }
    if (j.contains("appearance") && !j["appearance"].is_null()) {
      auto v = JsonFloatVector(j["appearance"], line_no);
      if (v.size() != kAppearanceDim) {
        throw ParseError("appearance length mismatch: got " +
                             std::to_string(v.size()) + ", expected 128",
                         line_no);
      }
      det.appearance = std::move(v);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field type: ") + e.what(), line_no);
  }
  return det;
}

json NumberJson(double v) {
  if (std::floor(v) == v && std::abs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

}  // namespace

DetectionFormat GuessDetectionFormat(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? DetectionFormat::kJsonLines
                                             : DetectionFormat::kMotText;
}

std::size_t DetectionFile::detection_count() const {
  std::size_t n = 0;
  for (const auto& f : frames) n += f.detections.size();
  return n;
}

std::vector<Appearance> ReadAppearanceSidecar(std::istream& in) {
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  constexpr std::size_t kRecordBytes = kAppearanceDim * 4;
  if (bytes.size() % kRecordBytes != 0) {
    throw ParseError("appearance length mismatch: sidecar holds " +
                     std::to_string(bytes.size() / 4) +
                     " floats, not a multiple of 128");
  }
  std::vector<Appearance> records(bytes.size() / kRecordBytes,
                                  Appearance(kAppearanceDim));
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (std::size_t k = 0; k < kAppearanceDim; ++k) {
      const auto* p = reinterpret_cast<const unsigned char*>(
          bytes.data() + r * kRecordBytes + k * 4);
      const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                                 (static_cast<std::uint32_t>(p[1]) << 8) |
                                 (static_cast<std::uint32_t>(p[2]) << 16) |
                                 (static_cast<std::uint32_t>(p[3]) << 24);
      records[r][k] = std::bit_cast<float>(bits);
    }
  }
  return records;
}

void WriteAppearanceSidecar(std::ostream& out,
                            const std::vector<Appearance>& records) {
  for (const auto& rec : records) {
    if (rec.size() != kAppearanceDim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "appearance length mismatch on write");
    }
    for (float x : rec) {
      const auto bits = std::bit_cast<std::uint32_t>(x);
      const char b[4] = {static_cast<char>(bits & 0xff),
                         static_cast<char>((bits >> 8) & 0xff),
                         static_cast<char>((bits >> 16) & 0xff),
                         static_cast<char>((bits >> 24) & 0xff)};
      out.write(b, 4);
    }
  }
}

DetectionFile ParseDetections(std::istream& in, DetectionFormat format,
                              const DetectionParseOptions& options,
                              std::istream* sidecar) {
  DetectionFile result;
  std::vector<Detection> records;
  std::string line;
  int line_no = 0;
  int last_frame = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    Detection det = format == DetectionFormat::kMotText
                        ? ParseMotRecord(line, line_no, result.warnings)
                        : ParseJsonRecord(line, line_no, result.warnings);
    if (det.frame_index < 1) {
      throw ParseError("frame index must be >= 1", line_no);
    }
    if (det.frame_index < last_frame) {
      throw ParseError("non-monotone frame index " +
                           std::to_string(det.frame_index) + " after " +
                           std::to_string(last_frame),
                       line_no);
    }
    last_frame = det.frame_index;
    if (!det.bbox.valid() || !std::isfinite(det.bbox.left) ||
        !std::isfinite(det.bbox.top)) {
      throw ParseError("bbox width and height must be positive", line_no);
    }
    if (options.image) {
      det.clamped = ClampToImage(det.bbox, *options.image);
      if (det.clamped) {
        if (!det.bbox.valid()) {
          result.warnings.push_back("line " + std::to_string(line_no) +
                                    ": bbox outside image, dropped");
          continue;
        }
        result.warnings.push_back("line " + std::to_string(line_no) +
                                  ": bbox clamped to image");
      }
    }
    records.push_back(std::move(det));
  }

  if (sidecar != nullptr) {
    const auto appearances = ReadAppearanceSidecar(*sidecar);
    if (appearances.size() != records.size()) {
      throw ParseError("appearance length mismatch: " +
                       std::to_string(appearances.size()) +
                       " sidecar records for " +
                       std::to_string(records.size()) + " detections");
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i].appearance = appearances[i];
    }
  }
  for (auto& det : records) {
    if (det.appearance) det.appearance = NormalizeAppearance(*det.appearance);
  }

  for (auto& det : records) {
    if (result.frames.empty() ||
        result.frames.back().frame_index != det.frame_index) {
      result.frames.push_back({det.frame_index, {}});
    }
    result.frames.back().detections.push_back(std::move(det));
  }
  for (auto& frame : result.frames) {
    std::stable_sort(frame.detections.begin(), frame.detections.end(),
                     [](const Detection& a, const Detection& b) {
                       return a.bbox.left < b.bbox.left;
                     });
  }
  return result;
}

DetectionFile ReadDetectionFile(const std::filesystem::path& path,
                                DetectionFormat format,
                                const DetectionParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  if (options.sidecar) {
    std::ifstream side(*options.sidecar, std::ios::binary);
    if (!side) {
      throw Error(ErrorCode::kIo, "cannot read " + options.sidecar->string());
    }
    return ParseDetections(in, format, options, &side);
  }
  return ParseDetections(in, format, options, nullptr);
}

std::string FormatMotLine(int frame, int id, const BBox& box,
                          double confidence) {
  std::string s = std::to_string(frame);
  s += ',';
  s += std::to_string(id);
  for (double v : {box.left, box.top, box.width, box.height, confidence}) {
    s += ',';
    s += FormatDouble(v);
  }
  s += ",-1,-1,-1";
  return s;
}

void WriteDetections(std::ostream& out,
                     const std::vector<FrameDetections>& frames,
                     DetectionFormat format) {
  for (const auto& frame : frames) {
    for (const auto& det : frame.detections) {
      if (format == DetectionFormat::kMotText) {
        out << FormatMotLine(det.frame_index, det.id, det.bbox, det.confidence)
            << '\n';
        continue;
      }
      nlohmann::ordered_json j;
      j["frame"] = det.frame_index;
      if (det.id != -1) j["id"] = det.id;
      j["bbox"] = {NumberJson(det.bbox.left), NumberJson(det.bbox.top),
                   NumberJson(det.bbox.width), NumberJson(det.bbox.height)};
      j["class"] = std::string(ClassLabelName(det.class_label));
      j["conf"] = NumberJson(det.confidence);
      if (det.contour) {
        j["contour"] = nlohmann::ordered_json::array();
        for (const auto& p : *det.contour) {
          j["contour"].push_back({NumberJson(p.u), NumberJson(p.v)});
        }
      } else {
        j["contour"] = nullptr;
      }
      out << j.dump() << '\n';
    }
  }
}

std::vector<Detection> Flatten(const std::vector<FrameDetections>& frames) {
  std::vector<Detection> out;
  for (const auto& f : frames) {
    out.insert(out.end(), f.detections.begin(), f.detections.end());
  }
  return out;
}

}  // namespace possense
