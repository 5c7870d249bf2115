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

#include <algorithm>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>
#include <gtest/gtest.h>

#include "possense/synth/rng.h"
#include "possense/tracking/distances.h"
#include "possense/tracking/hungarian.h"
#include "possense/tracking/kalman_filter.h"

namespace possense::tracking {
namespace {

// Minimum total over assignments of min(rows, cols) pairs.
double BruteForceMin(const Eigen::MatrixXd& c) {
  const bool transpose = c.rows() > c.cols();
  const Eigen::MatrixXd m = transpose ? Eigen::MatrixXd(c.transpose()) : c;
  std::vector<int> cols(m.cols());
  std::iota(cols.begin(), cols.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (int r = 0; r < m.rows(); ++r) sum += m(r, cols[r]);
    best = std::min(best, sum);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

TEST(HungarianProperty, MatchesBruteForce) {
  synth::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng.Below(6));
    const int cols = 1 + static_cast<int>(rng.Below(6));
    Eigen::MatrixXd c(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int k = 0; k < cols; ++k) c(r, k) = static_cast<int>(rng.Below(20));
    }
    const auto a = HungarianAssign(c);
    ASSERT_EQ(static_cast<int>(a.matches.size()), std::min(rows, cols));
    double sum = 0.0;
    std::vector<char> row_used(rows), col_used(cols);
    for (const auto& [r, k] : a.matches) {
      ASSERT_FALSE(row_used[r] || col_used[k]);
      row_used[r] = col_used[k] = 1;
      sum += c(r, k);
    }
    EXPECT_DOUBLE_EQ(sum, a.total_cost);
    EXPECT_DOUBLE_EQ(sum, BruteForceMin(c)) << "trial " << trial;
  }
}

TEST(HungarianProperty, InvariantToRowShift) {
  synth::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd c(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int k = 0; k < 4; ++k) c(r, k) = rng.Uniform(0, 10);
    }
    Eigen::MatrixXd shifted = c;
    shifted.row(1).array() += 3.0;
    auto sorted = [](std::vector<std::pair<int, int>> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    EXPECT_EQ(sorted(HungarianAssign(c).matches),
              sorted(HungarianAssign(shifted).matches));
  }
}

TEST(MahalanobisProperty, IdentityCovarianceIsEuclidean) {
  synth::Rng rng(8);
  for (int k = 0; k < 1000; ++k) {
    Vector4 d;
    for (int i = 0; i < 4; ++i) d(i) = rng.Normal(0.0, 50.0);
    EXPECT_NEAR(MahalanobisSquared(d, Matrix4::Identity()), d.squaredNorm(),
                1e-12 * std::max(1.0, d.squaredNorm()));
  }
}

TEST(KalmanProperty, CovarianceStaysSymmetricPositiveDefinite) {
  synth::Rng rng(13);
  const KalmanModel model;
  Vector4 z(300, 200, 0.45, 120);
  Gaussian8 g = model.Initiate(z);
  for (int step = 0; step < 2000; ++step) {
    model.Predict(g, 1 + static_cast<int>(rng.Below(3)));
    z += Vector4(rng.Normal(2, 1), rng.Normal(0, 1), 0.0, rng.Normal(0, 0.3));
    model.Update(g, z);
    const Matrix8& p = g.covariance;
    ASSERT_LE((p - p.transpose()).norm(), 1e-12 * p.norm());
    ASSERT_EQ(Eigen::LLT<Matrix8>(p).info(), Eigen::Success);
  }
}

TEST(IouProperty, SymmetricAndBounded) {
  synth::Rng rng(21);
  for (int k = 0; k < 500; ++k) {
    const BBox a{rng.Uniform(0, 50), rng.Uniform(0, 50), rng.Uniform(1, 30),
                 rng.Uniform(1, 30)};
    const BBox b{rng.Uniform(0, 50), rng.Uniform(0, 50), rng.Uniform(1, 30),
                 rng.Uniform(1, 30)};
    const double ab = Iou(a, b);
    EXPECT_DOUBLE_EQ(ab, Iou(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(Iou(a, a), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace possense::tracking
