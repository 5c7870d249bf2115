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

#ifndef POSSENSE_SYNTH_PERTURB_H_
#define POSSENSE_SYNTH_PERTURB_H_

#include <cstdint>

#include "possense/evaluation/mot_metrics.h"

namespace possense::synth {

// Number of places where an identity can be relabelled: consecutive
// appearances of the same id.
int CountIdBoundaries(const evaluation::MotSequence& gt);

// Copies gt and, at k distinct boundaries picked with the seed, gives the
// identity a fresh id from that frame on. Each relabelling is one ID switch
// against the original. Throws when k exceeds the boundary count.
evaluation::MotSequence PerturbIds(const evaluation::MotSequence& gt, int k,
                                   std::uint64_t seed);

}  // namespace possense::synth

#endif  // POSSENSE_SYNTH_PERTURB_H_
