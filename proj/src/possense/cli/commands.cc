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

#include "possense/cli/commands.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "possense/cli/manifest.h"
#include "possense/evaluation/report.h"
#include "possense/grouping/grouping_io.h"
#include "possense/mapping/camera_model.h"
#include "possense/model/detection_io.h"
#include "possense/model/trajectory.h"
#include "possense/monitoring/aggregate.h"
#include "possense/monitoring/mask.h"
#include "possense/monitoring/monitoring_io.h"
#include "possense/monitoring/timeline.h"
#include "possense/synth/generator.h"
#include "possense/tracking/track_io.h"

namespace possense::cli {

namespace {

std::ofstream OpenOut(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  return f;
}

void RequireFile(const fs::path& p, const std::string& what) {
  if (p.empty()) throw Error(ErrorCode::kIo, what + " path is required");
  if (!fs::is_regular_file(p)) {
    throw Error(ErrorCode::kIo, what + " not found: " + p.string());
  }
}

template <typename Fn>
fs::path WriteFile(const fs::path& p, Fn&& fn) {
  auto f = OpenOut(p);
  fn(f);
  return p;
}

nlohmann::ordered_json Optional(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void FinishCommand(const fs::path& out_dir, const std::string& name,
                   const PipelineConfig& cfg, const CommandOutput& out) {
  WriteManifest(out_dir, name, cfg.Canonical(), out.inputs, out.outputs);
}

nlohmann::ordered_json ErrorJson(const std::exception& e) {
  nlohmann::ordered_json j;
  if (const auto* pe = dynamic_cast<const Error*>(&e)) {
    j["error"] = std::string(ErrorCodeName(pe->code()));
  } else {
    j["error"] = "internal";
  }
  j["message"] = e.what();
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    if (!ce->key().empty()) j["key"] = ce->key();
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    if (pe->line() > 0) j["line"] = pe->line();
  }
  return j;
}

TrackResult CmdTrack(const TrackOptions& opt, const PipelineConfig& cfg) {
  RequireFile(opt.detections, "detections");
  RequireFile(opt.calibration, "calibration");
  const mapping::CameraModel camera = mapping::LoadCameraModel(opt.calibration);
  DetectionFormat format = GuessDetectionFormat(opt.detections);
  if (opt.format) {
    if (*opt.format == "mot") {
      format = DetectionFormat::kMotText;
    } else if (*opt.format == "jsonl") {
      format = DetectionFormat::kJsonLines;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "--format must be 'mot' or 'jsonl'");
    }
  }
  DetectionParseOptions parse;
  parse.image = camera.image_size();
  TrackResult res;
  res.inputs = {opt.detections, opt.calibration};
  if (opt.appearance) {
    RequireFile(*opt.appearance, "appearance sidecar");
    parse.sidecar = *opt.appearance;
    res.inputs.push_back(*opt.appearance);
  }
  const DetectionFile dets = ReadDetectionFile(opt.detections, format, parse);
  res.warnings = dets.warnings;
  auto tracklets = tracking::RunTracker(dets.frames, cfg.tracking, cfg.clock());
  res.tracklets =
      tracking::FilterShortTracklets(std::move(tracklets), cfg.min_tracklet_len);
  res.world = mapping::MapTracklets(res.tracklets, camera, cfg.clock(),
                                    &res.mapping);
  if (res.mapping.dropped_horizon + res.mapping.dropped_out_of_image > 0) {
    res.warnings.push_back(
        std::to_string(res.mapping.dropped_horizon +
                       res.mapping.dropped_out_of_image) +
        " tracked boxes could not be mapped to the ground");
  }
  fs::create_directories(opt.out_dir);
  res.outputs.push_back(WriteFile(opt.out_dir / "tracks.txt", [&](auto& f) {
    tracking::WriteTrackFile(f, res.tracklets);
  }));
  res.outputs.push_back(
      WriteFile(opt.out_dir / "trajectories.csv",
                [&](auto& f) { WriteTrajectories(f, res.world); }));
  FinishCommand(opt.out_dir, "track", cfg, res);
  return res;
}

GroupResult CmdGroup(const GroupOptions& opt, const PipelineConfig& cfg) {
  RequireFile(opt.trajectories, "trajectories");
  const TrajectorySet tracks = ReadTrajectoryFile(opt.trajectories);
  GroupResult res;
  res.inputs = {opt.trajectories};
  res.windows = grouping::DetectGroupsAll(tracks, cfg.grouping);
  int degenerate = 0;
  for (const auto& w : res.windows) degenerate += w.granger_degenerate_pairs;
  if (degenerate > 0) {
    res.warnings.push_back(std::to_string(degenerate) +
                           " pairs had a rank-deficient causality fit");
  }
  fs::create_directories(opt.out_dir);
  res.outputs.push_back(WriteFile(opt.out_dir / "partitions.jsonl", [&](auto& f) {
    grouping::WritePartitions(f, res.windows);
  }));
  res.outputs.push_back(
      WriteFile(opt.out_dir / "pair_features.csv",
                [&](auto& f) { grouping::WritePairFeatures(f, res.windows); }));
  FinishCommand(opt.out_dir, "group", cfg, res);
  return res;
}

MonitorResult CmdMonitor(const MonitorOptions& opt, const PipelineConfig& cfg) {
  RequireFile(opt.trajectories, "trajectories");
  RequireFile(opt.partitions, "partitions");
  RequireFile(opt.calibration, "calibration");
  const mapping::CameraModel camera = mapping::LoadCameraModel(opt.calibration);
  const TrajectorySet tracks = ReadTrajectoryFile(opt.trajectories);
  const auto table = grouping::ReadGroupingFile(opt.partitions);
  const auto timeline = monitoring::PartitionTimeline::FromTable(
      table, cfg.grouping.window_s, cfg.grouping.stride_s);
  MonitorResult res;
  res.inputs = {opt.trajectories, opt.partitions, opt.calibration};
  std::vector<monitoring::FacilityZone> zones;
  if (opt.zones) {
    RequireFile(*opt.zones, "zones");
    zones = monitoring::ReadZoneFile(*opt.zones, cfg.monitoring.zone_buffer_m,
                                     cfg.monitoring.zone_min_dwell_s);
    res.inputs.push_back(*opt.zones);
  }
  const double dt = cfg.clock().seconds_per_step();
  res.violations = monitoring::ScanViolations(tracks, timeline,
                                              cfg.monitoring.violations, dt);
  res.diameters = monitoring::MeasureDiameters(tracks, timeline);
  res.contacts = monitoring::DetectContacts(tracks, zones,
                                            cfg.monitoring.contacts, dt, &camera);
  auto masks = monitoring::CollectMaskObservations(tracks, cfg.monitoring.mask);
  if (!cfg.monitoring.classifier_command.empty()) {
    monitoring::ApplyLabels(
        masks, monitoring::RunClassifier(cfg.monitoring.classifier_command, masks));
  }
  res.mask_observations = static_cast<int>(masks.size());
  const double epoch = monitoring::ParseIsoTime(cfg.monitoring.start_time);
  const auto rows = monitoring::AggregateActivity(
      tracks, res.contacts, masks, cfg.monitoring.bucket, epoch);

  fs::create_directories(opt.out_dir);
  res.outputs.push_back(WriteFile(opt.out_dir / "violations.csv", [&](auto& f) {
    monitoring::WriteViolations(f, res.violations, epoch);
  }));
  res.outputs.push_back(WriteFile(opt.out_dir / "contacts.csv", [&](auto& f) {
    monitoring::WriteContacts(f, res.contacts, epoch);
  }));
  res.outputs.push_back(WriteFile(opt.out_dir / "diameters.csv", [&](auto& f) {
    monitoring::WriteDiameters(f, res.diameters);
  }));
  res.outputs.push_back(
      WriteFile(opt.out_dir / "mask_observations.csv", [&](auto& f) {
        monitoring::WriteMaskObservations(f, masks, epoch);
      }));
  res.outputs.push_back(WriteFile(opt.out_dir / "aggregate.csv", [&](auto& f) {
    monitoring::WriteAggregate(f, rows);
  }));
  FinishCommand(opt.out_dir, "monitor", cfg, res);
  return res;
}

EvalResult CmdEval(const EvalOptions& opt, const PipelineConfig& cfg) {
  RequireFile(opt.gt, "ground truth");
  RequireFile(opt.results, "results");
  EvalResult res;
  res.inputs = {opt.gt, opt.results};
  fs::create_directories(opt.out_dir);
  if (opt.mode == EvalMode::kMot) {
    const auto gt = evaluation::ReadMotFile(opt.gt, true);
    const auto pred = evaluation::ReadMotFile(opt.results, false);
    res.mot = evaluation::EvaluateMot(gt, pred, cfg.eval_iou_min);
    res.outputs.push_back(WriteFile(opt.out_dir / "mot_report.csv", [&](auto& f) {
      evaluation::WriteMotCsv(f, *res.mot);
    }));
    res.outputs.push_back(WriteFile(opt.out_dir / "mot_report.txt", [&](auto& f) {
      evaluation::WriteMotTable(f, *res.mot);
    }));
  } else {
    const auto gt = grouping::ReadGroupingFile(opt.gt);
    const auto pred = grouping::ReadGroupingFile(opt.results);
    std::optional<std::map<int, int>> id_map;
    if (opt.gt_tracks || opt.result_tracks) {
      if (!opt.gt_tracks || !opt.result_tracks) {
        throw Error(ErrorCode::kInvalidArgument,
                    "--gt-tracks and --result-tracks go together");
      }
      RequireFile(*opt.gt_tracks, "gt tracks");
      RequireFile(*opt.result_tracks, "result tracks");
      res.inputs.push_back(*opt.gt_tracks);
      res.inputs.push_back(*opt.result_tracks);
      id_map = evaluation::MapPredictedIds(
          evaluation::ReadMotFile(*opt.gt_tracks, true),
          evaluation::ReadMotFile(*opt.result_tracks, false), cfg.eval_iou_min);
    }
    res.grouping =
        evaluation::EvaluateGroupings(gt, pred, id_map ? &*id_map : nullptr);
    res.grouping->window_size_s = cfg.grouping.window_s;
    res.outputs.push_back(
        WriteFile(opt.out_dir / "group_report.csv", [&](auto& f) {
          evaluation::WriteGroupCsv(f, *res.grouping);
        }));
    res.outputs.push_back(
        WriteFile(opt.out_dir / "group_report.txt", [&](auto& f) {
          evaluation::WriteGroupTable(f, *res.grouping);
        }));
  }
  FinishCommand(opt.out_dir, "eval", cfg, res);
  return res;
}

CommandOutput CmdSynth(const SynthOptions& opt, const PipelineConfig& cfg) {
  RequireFile(opt.scenario, "scenario");
  synth::Scenario sc = synth::LoadScenario(opt.scenario);
  sc.window_s = cfg.grouping.window_s;
  sc.stride_s = cfg.grouping.stride_s;
  const auto bundle = synth::Generate(sc);
  CommandOutput res;
  res.inputs = {opt.scenario};
  res.warnings = bundle.warnings;
  res.outputs = synth::WriteBundle(bundle, opt.out_dir);
  res.outputs.push_back(WriteFile(opt.out_dir / "calibration.json", [&](auto& f) {
    f << mapping::CameraToJson(sc.camera).dump(2) << '\n';
  }));
  FinishCommand(opt.out_dir, "synth", cfg, res);
  return res;
}

RunAllResult CmdRunAll(const RunAllOptions& opt, const PipelineConfig& cfg) {
  RunAllResult res;
  const fs::path synth_dir = opt.out_dir / "synth";
  const auto synth_out = CmdSynth({opt.scenario, synth_dir}, cfg);
  const bool has_sidecar = fs::exists(synth_dir / "appearance.bin");

  TrackOptions t;
  t.detections = synth_dir / "detections.jsonl";
  t.calibration = synth_dir / "calibration.json";
  if (has_sidecar) t.appearance = synth_dir / "appearance.bin";
  t.format = "jsonl";
  t.out_dir = opt.out_dir / "track";
  const auto tracked = CmdTrack(t, cfg);

  const auto grouped =
      CmdGroup({t.out_dir / "trajectories.csv", opt.out_dir / "group"}, cfg);

  MonitorOptions m;
  m.trajectories = t.out_dir / "trajectories.csv";
  m.partitions = opt.out_dir / "group" / "partitions.jsonl";
  m.calibration = t.calibration;
  m.zones = opt.zones;
  m.out_dir = opt.out_dir / "monitor";
  const auto monitored = CmdMonitor(m, cfg);

  EvalOptions e;
  e.gt = synth_dir / "gt.txt";
  e.results = t.out_dir / "tracks.txt";
  e.mode = EvalMode::kMot;
  e.out_dir = opt.out_dir / "eval" / "mot";
  const auto mot = CmdEval(e, cfg);
  EvalOptions g;
  g.gt = synth_dir / "groups_gt.jsonl";
  g.results = m.partitions;
  g.mode = EvalMode::kGrouping;
  g.gt_tracks = synth_dir / "gt.txt";
  g.result_tracks = t.out_dir / "tracks.txt";
  g.out_dir = opt.out_dir / "eval" / "grouping";
  const auto grp = CmdEval(g, cfg);

  const auto gt = evaluation::ReadMotFile(synth_dir / "gt.txt", true);
  std::set<int> planted;
  for (const auto& [f, recs] : gt) {
    for (const auto& r : recs) planted.insert(r.id);
  }
  const std::string text = [&] {
    std::ifstream in(synth_dir / "detections.jsonl");
    std::string first;
    std::getline(in, first);
    return first;
  }();

  auto& s = res.summary;
  s["scenario"] = opt.scenario.filename().string();
  s["seed_header"] = text;
  s["planted_agents"] = planted.size();
  s["tracks"] = tracked.tracklets.size();
  s["mota"] = Optional(mot.mot->mota);
  s["motp"] = Optional(mot.mot->motp);
  s["id_switches"] = mot.mot->id_switches;
  s["counting_error"] = Optional(mot.mot->counting_error);
  s["grouping_precision"] = Optional(grp.grouping->precision);
  s["grouping_recall"] = Optional(grp.grouping->recall);
  s["grouping_f1"] = Optional(grp.grouping->f1);
  s["windows"] = grouped.windows.size();
  s["violations"] = monitored.violations.size();
  s["contacts"] = monitored.contacts.size();
  s["mask_observations"] = monitored.mask_observations;
  nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
  for (const auto* part :
       {&synth_out.warnings, &tracked.warnings, &grouped.warnings}) {
    for (const auto& w : *part) warnings.push_back(w);
  }
  s["warnings"] = warnings;

  res.inputs = {opt.scenario};
  if (opt.zones) res.inputs.push_back(*opt.zones);
  for (const auto* part : {&synth_out.outputs, &tracked.outputs,
                           &grouped.outputs, &monitored.outputs, &mot.outputs,
                           &grp.outputs}) {
    res.outputs.insert(res.outputs.end(), part->begin(), part->end());
  }
  res.outputs.push_back(WriteFile(opt.out_dir / "summary.json", [&](auto& f) {
    f << s.dump(2) << '\n';
  }));
  FinishCommand(opt.out_dir, "run-all", cfg, res);
  return res;
}

}  // namespace possense::cli
