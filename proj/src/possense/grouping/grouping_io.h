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

#ifndef POSSENSE_GROUPING_GROUPING_IO_H_
#define POSSENSE_GROUPING_GROUPING_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "possense/grouping/group_detector.h"

namespace possense::grouping {

using Groups = std::vector<std::vector<int>>;
// Window id -> groups.
using GroupingTable = std::map<int, Groups>;

// One JSON object per line:
// {"window":k,"start":s,"end":e,"groups":[[ids..],..],"objective":o}
void WritePartitions(std::ostream& out,
                     const std::vector<WindowResult>& results);

// Reads partition output or ground truth ({"window":k,"groups":[...]}).
// Extra keys are ignored. Duplicate windows are an error.
GroupingTable ReadGroupings(std::istream& in);
GroupingTable ReadGroupingFile(const std::filesystem::path& path);

// window,i,j,f1,f2,f3,f4,W_ij,co_frames,filtered
void WritePairFeatures(std::ostream& out,
                       const std::vector<WindowResult>& results);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_GROUPING_IO_H_
