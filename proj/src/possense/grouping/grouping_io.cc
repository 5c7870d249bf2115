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

#include "possense/grouping/grouping_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "possense/model/errors.h"
#include "possense/model/format.h"

namespace possense::grouping {

void WritePartitions(std::ostream& out,
                     const std::vector<WindowResult>& results) {
  for (const auto& r : results) {
    out << "{\"window\":" << r.window_id
        << ",\"start\":" << FormatDouble(r.start)
        << ",\"end\":" << FormatDouble(r.end) << ",\"groups\":[";
    for (std::size_t g = 0; g < r.partition.groups.size(); ++g) {
      if (g > 0) out << ',';
      out << '[';
      const auto& members = r.partition.groups[g];
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (k > 0) out << ',';
        out << members[k];
      }
      out << ']';
    }
    out << "],\"objective\":" << FormatDouble(r.partition.objective)
        << "}\n";
  }
}

GroupingTable ReadGroupings(std::istream& in) {
  GroupingTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("window") || !j.contains("groups")) {
      throw ParseError("grouping record needs 'window' and 'groups'", line_no);
    }
    if (!j["window"].is_number_integer() || !j["groups"].is_array()) {
      throw ParseError("'window' must be an integer, 'groups' an array",
                       line_no);
    }
    const int window = j["window"].get<int>();
    Groups groups;
    std::set<int> seen;
    for (const auto& g : j["groups"]) {
      if (!g.is_array()) throw ParseError("each group must be an array", line_no);
      std::vector<int> members;
      for (const auto& id : g) {
        if (!id.is_number_integer()) {
          throw ParseError("group members must be integer ids", line_no);
        }
        const int v = id.get<int>();
        if (!seen.insert(v).second) {
          throw ParseError("id " + std::to_string(v) +
                               " appears in two groups",
                           line_no);
        }
        members.push_back(v);
      }
      if (members.empty()) continue;
      std::sort(members.begin(), members.end());
      groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end());
    if (!table.emplace(window, std::move(groups)).second) {
      throw ParseError("duplicate window " + std::to_string(window), line_no);
    }
  }
  return table;
}

GroupingTable ReadGroupingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadGroupings(in);
}

void WritePairFeatures(std::ostream& out,
                       const std::vector<WindowResult>& results) {
  out << "window,i,j,f1,f2,f3,f4,W_ij,co_frames,filtered\n";
  for (const auto& r : results) {
    for (const auto& p : r.pairs) {
      out << r.window_id << ',' << p.i << ',' << p.j << ','
          << FormatDouble(p.f1) << ',' << FormatDouble(p.f2) << ','
          << FormatDouble(p.f3) << ',' << FormatDouble(p.f4) << ','
          << FormatDouble(p.weight) << ',' << p.co_occurring << ','
          << (p.filtered ? 1 : 0) << '\n';
    }
  }
}

}  // namespace possense::grouping
