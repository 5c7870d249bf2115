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

#ifndef POSSENSE_GROUPING_AFFINITY_H_
#define POSSENSE_GROUPING_AFFINITY_H_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace possense::grouping {

inline constexpr int kFeatureCount = 4;
using FeatureVector = std::array<double, kFeatureCount>;

struct PairFeatures {
  int i = 0;
  int j = 0;
  double f1 = 0.0;  // proxemics likelihood, larger = closer
  double f2 = 0.0;  // DTW shape distance, larger = less alike
  double f3 = 0.0;  // Granger score, larger = more coupled
  double f4 = 0.0;  // path convergence, larger = more convergent
  int co_occurring = 0;
  int frames_passing = 0;        // frames where the frame feature exists
  double frame_feature_mean = 0.0;
  bool granger_degenerate = false;
  bool filtered = false;  // no co-occurrence or every frame rejected
  FeatureVector dissimilarity{};  // oriented and rescaled, filled later
  double weight = 0.0;
};

struct FeatureWeights {
  FeatureVector alpha{0.6, 0.4, 0.2, 0.3};
  FeatureVector beta{0.4, 0.6, 0.2, 0.3};
  void Validate() const;
};

// Raw-feature range used for min-max rescaling.
struct FeatureRange {
  FeatureVector lo{};
  FeatureVector hi{};
};

enum class Normalization {
  kReference,  // fixed bounds from canonical near/far walking pairs
  kWindow,     // min-max over the pairs of the current window
};
std::string NormalizationName(Normalization n);
Normalization ParseNormalization(const std::string& text);

// Bounds over the unfiltered pairs.
FeatureRange WindowRange(const std::vector<PairFeatures>& pairs);

// Orients every feature so that larger = more dissimilar and rescales to
// [0, 1]: f1, f3 and f4 are inverted, f2 is kept.
FeatureVector Dissimilarity(const PairFeatures& p, const FeatureRange& range);

// alpha . (1 - f) - beta . f
double AffinityWeight(const FeatureVector& f, const FeatureWeights& w);

struct AffinityMatrix {
  std::vector<int> ids;  // row/column order
  Eigen::MatrixXd w;
};

// Fills dissimilarity and weight on every pair. Filtered pairs get
// -negative_fraction * sum(beta). Pairs absent from the list are treated
// as filtered.
AffinityMatrix BuildAffinity(const std::vector<int>& ids,
                             std::vector<PairFeatures>& pairs,
                             const FeatureRange& range,
                             const FeatureWeights& weights,
                             double negative_fraction);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_AFFINITY_H_
