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

#ifndef POSSENSE_GROUPING_CORRELATION_CLUSTERING_H_
#define POSSENSE_GROUPING_CORRELATION_CLUSTERING_H_

#include <vector>

#include <Eigen/Core>

#include "possense/grouping/affinity.h"

namespace possense::grouping {

// Cluster label per row of W.
using Labels = std::vector<int>;

// Sum of W over ordered within-cluster pairs, i.e. twice the unordered sum.
double PartitionObjective(const Eigen::MatrixXd& w, const Labels& labels);

// Branch and bound over set partitions in restricted-growth order. Exact;
// intended for up to a dozen elements.
Labels ExactCorrelationClustering(const Eigen::MatrixXd& w);

// Agglomerative merging of the cluster pair with the largest positive
// cross-sum, repeated until no merge helps.
Labels GreedyCorrelationClustering(const Eigen::MatrixXd& w);

// Moves single elements to another cluster or to a new singleton while any
// move strictly improves the objective.
Labels LocalSearch(const Eigen::MatrixXd& w, Labels labels);

// Objective gain of moving element e to cluster `target` (-1 = new
// singleton).
double MoveGain(const Eigen::MatrixXd& w, const Labels& labels, int e,
                int target);

struct GroupPartition {
  std::vector<std::vector<int>> groups;  // ids, sorted, ordered by first id
  double objective = 0.0;
  bool exact = false;
};

GroupPartition CorrelationClustering(const AffinityMatrix& affinity,
                                     int exact_limit = 12);

// Canonical relabelling: clusters numbered by first appearance.
Labels Canonical(const Labels& labels);

}  // namespace possense::grouping

#endif  // POSSENSE_GROUPING_CORRELATION_CLUSTERING_H_
