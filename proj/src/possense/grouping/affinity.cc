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

#include "possense/grouping/affinity.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

double Unit(double x, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

FeatureVector Raw(const PairFeatures& p) { return {p.f1, p.f2, p.f3, p.f4}; }

}  // namespace

void FeatureWeights::Validate() const {
  for (int k = 0; k < kFeatureCount; ++k) {
    if (!(alpha[k] >= 0.0) || !(beta[k] >= 0.0)) {
      throw Error(ErrorCode::kConfig,
                  "grouping.alpha and grouping.beta must be nonnegative");
    }
  }
}

std::string NormalizationName(Normalization n) {
  return n == Normalization::kWindow ? "window" : "reference";
}

Normalization ParseNormalization(const std::string& text) {
  if (text == "reference") return Normalization::kReference;
  if (text == "window") return Normalization::kWindow;
  throw Error(ErrorCode::kConfig,
              "grouping.normalization must be 'reference' or 'window'");
}

FeatureRange WindowRange(const std::vector<PairFeatures>& pairs) {
  FeatureRange r;
  r.lo.fill(std::numeric_limits<double>::infinity());
  r.hi.fill(-std::numeric_limits<double>::infinity());
  bool any = false;
  for (const auto& p : pairs) {
    if (p.filtered) continue;
    any = true;
    const FeatureVector v = Raw(p);
    for (int k = 0; k < kFeatureCount; ++k) {
      r.lo[k] = std::min(r.lo[k], v[k]);
      r.hi[k] = std::max(r.hi[k], v[k]);
    }
  }
  if (!any) {
    r.lo.fill(0.0);
    r.hi.fill(0.0);
  }
  return r;
}

FeatureVector Dissimilarity(const PairFeatures& p, const FeatureRange& range) {
  const FeatureVector v = Raw(p);
  FeatureVector d;
  for (int k = 0; k < kFeatureCount; ++k) {
    const double u = Unit(v[k], range.lo[k], range.hi[k]);
    d[k] = k == 1 ? u : 1.0 - u;
  }
  return d;
}

double AffinityWeight(const FeatureVector& f, const FeatureWeights& w) {
  double sum = 0.0;
  for (int k = 0; k < kFeatureCount; ++k) {
    sum += w.alpha[k] * (1.0 - f[k]) - w.beta[k] * f[k];
  }
  return sum;
}

AffinityMatrix BuildAffinity(const std::vector<int>& ids,
                             std::vector<PairFeatures>& pairs,
                             const FeatureRange& range,
                             const FeatureWeights& weights,
                             double negative_fraction) {
  const double beta_sum =
      std::accumulate(weights.beta.begin(), weights.beta.end(), 0.0);
  const double repel = -negative_fraction * beta_sum;
  const int n = static_cast<int>(ids.size());
  AffinityMatrix out;
  out.ids = ids;
  out.w = Eigen::MatrixXd::Constant(n, n, repel);
  out.w.diagonal().setZero();
  auto index_of = [&](int id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair refers to an id outside the window");
    }
    return static_cast<int>(it - ids.begin());
  };
  for (auto& p : pairs) {
    const int a = index_of(p.i);
    const int b = index_of(p.j);
    if (a == b) continue;
    if (p.filtered) {
      p.dissimilarity.fill(1.0);
      p.weight = repel;
    } else {
      p.dissimilarity = Dissimilarity(p, range);
      p.weight = AffinityWeight(p.dissimilarity, weights);
    }
    out.w(a, b) = out.w(b, a) = p.weight;
  }
  return out;
}

}  // namespace possense::grouping
