// Copyright 2026 The dfsbench Authors
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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "dfs/operator_core.hpp"

namespace dfs::testing {

inline double max_diff(const Matrix& a, const Matrix& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

inline Matrix eye(Eigen::Index d) { return Matrix::Identity(d, d); }

/// Row-major literal for small matrices.
inline Matrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<Complex> entries) {
  Matrix m(rows, cols);
  auto it = entries.begin();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = *it++;
  }
  return m;
}

/// Binomial coefficient for small arguments.
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

inline constexpr Complex kI{0.0, 1.0};

}  // namespace dfs::testing
