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

// operator_core.hpp: dense complex operators, HS geometry, closures and commutants

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dfs/errors.hpp"

namespace dfs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Operators are plain dense matrices; these are the shape/structure predicates.
/// All tolerances are absolute bounds on the max-entry deviation.
bool is_square(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol);
bool is_unitary(const Matrix& a, double tol);
bool is_zero(const Matrix& a, double tol);
double max_abs_entry(const Matrix& a);

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kDefaultDimCap = 256;

/// Throws DimensionCapExceeded when dim > cap.
void check_dim_cap(std::size_t dim, std::size_t cap = kDefaultDimCap);

/// Hilbert-Schmidt inner product Tr(a^dagger b), no 1/dim normalization.
Complex hs_inner(const Matrix& a, const Matrix& b);
double hs_norm(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// exp(a) by scaling and squaring.
Matrix matrix_exp(const Matrix& a);

/// Hermitian h with exp(i h) = u, eigenphases taken in (-pi, pi].
/// Throws NotUnitary, or BranchCutAmbiguity if some eigenphase is within
/// branch_tol of -pi (i.e. an eigenvalue sits on -1).
Matrix principal_log_unitary(const Matrix& u, double tol = 1e-9, double branch_tol = 1e-9);

/// Orthonormal vectors spanning a subspace of C^ambient_dim (stored as columns).
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim);
  Subspace(std::size_t ambient_dim, Matrix columns);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return static_cast<std::size_t>(columns_.cols()); }
  const Matrix& columns() const { return columns_; }
  Vector vector(std::size_t i) const { return columns_.col(static_cast<Eigen::Index>(i)); }
  /// Orthogonal projector onto the span.
  Matrix projector() const { return columns_ * columns_.adjoint(); }

 private:
  std::size_t ambient_dim_;
  Matrix columns_;
};

/// HS-orthonormal list of operators on a dim-dimensional space.
class OperatorBasis {
 public:
  OperatorBasis(std::size_t dim, double tol);

  /// Orthonormalizes `ops` (modified Gram-Schmidt, twice) dropping dependent ones.
  static OperatorBasis from_span(std::size_t dim, std::span<const Matrix> ops, double tol = kDefaultTol);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  double tol() const { return tol_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }

  /// Appends the component of `op` orthogonal to the current span if its norm
  /// exceeds tol * max(1, |op|). Returns true when an element was added.
  bool try_add(const Matrix& op);

  /// HS-orthogonal projection onto the span.
  Matrix project(const Matrix& op) const;
  /// |op - project(op)|_HS
  double residual(const Matrix& op) const;
  bool contains(const Matrix& op, double tol) const { return residual(op) <= tol; }

  /// Gram matrix of the elements under hs_inner.
  Matrix gram() const;
  /// Projector on the vectorized operator space (dim^2 x dim^2), column-major vec.
  Matrix span_projector() const;

 private:
  std::size_t dim_;
  double tol_;
  std::vector<Matrix> elements_;
};

/// Orthonormal basis of the intersection of the kernels. Singular values below
/// tol * (largest singular value of the stacked map) count as zero. An empty
/// list returns the whole space.
Subspace common_null_space(std::span<const Matrix> ops, std::size_t dim, double tol = kDefaultTol);

/// Smallest complex Lie algebra containing the generators.
/// max_dim == 0 means dim^2. Throws ClosureOverflow when the span outgrows max_dim.
OperatorBasis lie_closure(std::span<const Matrix> generators, double tol = kDefaultTol,
                          std::size_t max_dim = 0);

/// Smallest unital associative algebra containing the generators.
OperatorBasis associative_closure(std::span<const Matrix> generators, double tol = kDefaultTol,
                                  std::size_t max_dim = 0);

/// Real Lie closure of (typically anti-Hermitian) generators: the span is taken
/// over the reals. Returned elements are orthonormal under Re hs_inner.
std::vector<Matrix> real_lie_closure(std::span<const Matrix> generators, double tol = kDefaultTol,
                                     std::size_t max_dim = 0);

/// {X : [X, a] = 0 for every a in the basis}, via the common null space of the
/// vectorized commutator maps.
OperatorBasis commutant(const OperatorBasis& algebra_basis, double tol = kDefaultTol);

}  // namespace dfs
