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

#ifndef POSSENSE_EVALUATION_REPORT_H_
#define POSSENSE_EVALUATION_REPORT_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "possense/evaluation/grouping_metrics.h"
#include "possense/evaluation/mot_metrics.h"

namespace possense::evaluation {

// Percentage with one decimal, or "-" when absent.
std::string Percent(const std::optional<double>& fraction);

// Header row plus one value row. Percentages are in [0, 100] with full
// precision; absent values are empty.
void WriteMotCsv(std::ostream& out, const MotReport& r);
// Fixed-width table: MOTA MOTP Prcn Rcll GT MT PT ML IDs IDCt.
void WriteMotTable(std::ostream& out, const MotReport& r);

void WriteGroupCsv(std::ostream& out, const GroupReport& r);
void WriteGroupTable(std::ostream& out, const GroupReport& r);

}  // namespace possense::evaluation

#endif  // POSSENSE_EVALUATION_REPORT_H_
