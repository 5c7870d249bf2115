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

#include "possense/grouping/correlation_clustering.h"

#include <algorithm>
#include <map>

#include "possense/model/errors.h"

namespace possense::grouping {

namespace {

constexpr double kImprovement = 1e-12;

int ClusterCount(const Labels& labels) {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return k;
}

struct Search {
  const Eigen::MatrixXd& w;
  int n;
  std::vector<double> suffix_bound;  // best possible gain from element k on
  Labels current;
  Labels best;
  double best_value;
  std::vector<std::vector<int>> clusters;

  void Recurse(int k, double value) {
    if (k == n) {
      if (value > best_value + kImprovement) {
        best_value = value;
        best = current;
      }
      return;
    }
    if (value + suffix_bound[k] <= best_value + kImprovement) return;
    const int existing = static_cast<int>(clusters.size());
    for (int c = 0; c < existing; ++c) {
      double gain = 0.0;
      for (int m : clusters[c]) gain += 2.0 * w(k, m);
      clusters[c].push_back(k);
      current[k] = c;
      Recurse(k + 1, value + gain);
      clusters[c].pop_back();
    }
    clusters.push_back({k});
    current[k] = existing;
    Recurse(k + 1, value);
    clusters.pop_back();
  }
};

void CheckSquare(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "affinity must be square");
  }
  if (!w.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "affinity must be finite");
  }
}

}  // namespace

Labels Canonical(const Labels& labels) {
  std::map<int, int> remap;
  Labels out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] =
        remap.emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

double PartitionObjective(const Eigen::MatrixXd& w, const Labels& labels) {
  double sum = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && labels[a] == labels[b]) sum += w(a, b);
    }
  }
  return sum;
}

double MoveGain(const Eigen::MatrixXd& w, const Labels& labels, int e,
                int target) {
  double leave = 0.0, join = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int m = 0; m < n; ++m) {
    if (m == e) continue;
    if (labels[m] == labels[e]) leave += w(e, m);
    if (target >= 0 && labels[m] == target) join += w(e, m);
  }
  return 2.0 * (join - leave);
}

Labels GreedyCorrelationClustering(const Eigen::MatrixXd& w) {
  CheckSquare(w);
  const int n = static_cast<int>(w.rows());
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) clusters.push_back({i});
  while (clusters.size() > 1) {
    double best = kImprovement;
    int ba = -1, bb = -1;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double cross = 0.0;
        for (int x : clusters[a]) {
          for (int y : clusters[b]) cross += w(x, y);
        }
        if (cross > best) {
          best = cross;
          ba = static_cast<int>(a);
          bb = static_cast<int>(b);
        }
      }
    }
    if (ba < 0) break;
    clusters[ba].insert(clusters[ba].end(), clusters[bb].begin(),
                        clusters[bb].end());
    clusters.erase(clusters.begin() + bb);
  }
  Labels labels(n, 0);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (int x : clusters[c]) labels[x] = static_cast<int>(c);
  }
  return Canonical(labels);
}

Labels LocalSearch(const Eigen::MatrixXd& w, Labels labels) {
  CheckSquare(w);
  const int n = static_cast<int>(labels.size());
  bool moved = true;
  // Each accepted move strictly raises a bounded objective, so this ends.
  while (moved) {
    moved = false;
    for (int e = 0; e < n; ++e) {
      const int k = ClusterCount(labels);
      int best_target = labels[e];
      double best_gain = kImprovement;
      for (int c = -1; c < k; ++c) {
        if (c == labels[e]) continue;
        const double g = MoveGain(w, labels, e, c);
        if (g > best_gain) {
          best_gain = g;
          best_target = c;
        }
      }
      if (best_target != labels[e]) {
        labels[e] = best_target < 0 ? k : best_target;
        labels = Canonical(labels);
        moved = true;
      }
    }
  }
  return labels;
}

Labels ExactCorrelationClustering(const Eigen::MatrixXd& w) {
  CheckSquare(w);
  const int n = static_cast<int>(w.rows());
  if (n == 0) return {};
  Labels seed = LocalSearch(w, GreedyCorrelationClustering(w));
  Search s{w, n, std::vector<double>(n + 1, 0.0), Labels(n, 0), seed,
           PartitionObjective(w, seed), {}};
  for (int k = n - 1; k >= 0; --k) {
    double pos = 0.0;
    for (int m = 0; m < k; ++m) pos += 2.0 * std::max(0.0, w(k, m));
    s.suffix_bound[k] = s.suffix_bound[k + 1] + pos;
  }
  s.Recurse(0, 0.0);
  return Canonical(s.best);
}

GroupPartition CorrelationClustering(const AffinityMatrix& affinity,
                                     int exact_limit) {
  const int n = static_cast<int>(affinity.ids.size());
  if (affinity.w.rows() != n || affinity.w.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "affinity size does not match its ids");
  }
  GroupPartition out;
  if (n == 0) return out;
  Labels labels;
  if (n <= exact_limit) {
    labels = ExactCorrelationClustering(affinity.w);
    out.exact = true;
  } else {
    labels = LocalSearch(affinity.w, GreedyCorrelationClustering(affinity.w));
  }
  out.objective = PartitionObjective(affinity.w, labels);
  std::map<int, std::vector<int>> by_label;
  for (int i = 0; i < n; ++i) by_label[labels[i]].push_back(affinity.ids[i]);
  for (auto& [l, g] : by_label) {
    std::sort(g.begin(), g.end());
    out.groups.push_back(std::move(g));
  }
  std::sort(out.groups.begin(), out.groups.end());
  return out;
}

}  // namespace possense::grouping
