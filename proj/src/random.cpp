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

#include "dfs/random.hpp"

#include <cmath>

namespace dfs {

namespace {

using Index = Eigen::Index;

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

Matrix random_operator(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Index>(dim);
  Matrix g(d, d);
  // Explicit loop keeps the draw order fixed (row-major).
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) {
      g(r, c) = gaussian_complex(rng);
    }
  }
  return g;
}

Matrix random_hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = random_operator(dim, rng);
  return (g + g.adjoint()) / 2.0;
}

Matrix random_hermitian_unit_norm(std::size_t dim, Rng& rng) {
  const Matrix h = random_hermitian(dim, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  return norm > 0.0 ? Matrix(h / norm) : h;
}

Matrix random_unitary(std::size_t dim, Rng& rng) {
  const Matrix g = random_operator(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < q.cols(); ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) {
      q.col(i) *= diag / std::abs(diag);
    }
  }
  return q;
}

Vector random_state(std::size_t dim, Rng& rng) {
  Vector v(static_cast<Index>(dim));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = gaussian_complex(rng);
  }
  return v / v.norm();
}

}  // namespace dfs
