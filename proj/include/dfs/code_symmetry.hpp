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
// code_symmetry.hpp: noiseless code extraction, isotypic basis, symmetrization routes

#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "dfs/operator_core.hpp"
#include "dfs/random.hpp"
#include "dfs/rep_models.hpp"

namespace dfs {

/// Isometry V (d x n0) whose range is the code. n0 == 0 is a legal, empty code.
struct CodeSubspace {
  std::size_t ambient_dim = 0;
  std::size_t code_dim = 0;
  Matrix isometry;

  Matrix projector() const { return isometry * isometry.adjoint(); }
  bool empty() const { return code_dim == 0; }
};

/// The subspace annihilated by every generator.
CodeSubspace find_code(std::span<const Matrix> generators, double tol = kDefaultTol);

struct IrrepLabel {
  Spin j;
  int copy = 1;   // n = 1..n_J
  int level = 1;  // l = 1..d_J, l = 1 is the highest weight m = J
  bool operator==(const IrrepLabel&) const = default;
};

/// Orthonormal basis |J, n, l> ordered by (J ascending, n, l); the columns of
/// change_of_basis are the basis vectors in the computational basis.
struct IrrepBasis {
  std::vector<IrrepLabel> labels;
  Matrix change_of_basis;

  std::size_t dim() const { return labels.size(); }
};

/// Casimir eigenspaces, highest-weight vectors, then repeated S^- with
/// normalization. Degenerate highest-weight spaces are resolved by projecting
/// computational basis vectors in order. Throws DecompositionFailure if the
/// label census does not come out consistent.
IrrepBasis irrep_basis(const CollectiveModel& model, double tol = 1e-9);

/// Label census {J -> number of copies} of an irrep basis.
DecompositionSummary summarize(const IrrepBasis& basis);

/// HS-orthogonal projection onto the commutant span (the symmetrizing map).
Matrix commutant_projection(const Matrix& x, const OperatorBasis& commutant_basis);

/// Finite set of unitaries used for conjugation averages.
struct SymmetrizingGroup {
  std::vector<Matrix> elements;
  bool closure_verified = false;
  double tol = 0.0;
  /// max over pairs (g, h) of min_k min_phase |g h - e^{i phi} e_k|_HS
  double closure_defect = 0.0;

  std::size_t order() const { return elements.size(); }
};

/// Worst projective closure residual of the set.
double closure_defect(std::span<const Matrix> elements);

/// Wraps the elements, measuring the projective closure defect against tol.
SymmetrizingGroup make_symmetrizing_group(std::vector<Matrix> elements, double tol = 1e-9);

/// All products of the generators (exact equality within tol), breadth first.
/// Throws ClosureOverflow above max_order.
std::vector<Matrix> generate_group(std::span<const Matrix> generators, double tol = 1e-9,
                                   std::size_t max_order = 100000);

/// |E|^{-1} sum_j e_j x e_j^dagger.
Matrix finite_group_average(const Matrix& x, const SymmetrizingGroup& group);

/// sum_s Pi_s x Pi_s.
Matrix abelian_symmetrize(const Matrix& x, const AbelianModel& model);

// N = 2 collective qubits.
//
// Q = exp(i 2pi/3 S^z) and P = exp[angle (2^{-1/2} S^+ - 2^{-1} S^{+2} - h.c.)].
// On the triplet the bracket has eigenvalues {0, +-i sqrt 3}, so angle 2pi/sqrt 3
// makes P the identity while 2pi/(3 sqrt 3) makes it an order-3 shift.
inline constexpr double kN2LiteralAngle = 2.0 * std::numbers::pi / std::numbers::sqrt3;
inline constexpr double kN2ShiftAngle = 2.0 * std::numbers::pi / (3.0 * std::numbers::sqrt3);

Matrix n2_clock();
Matrix n2_shift(double angle = kN2ShiftAngle);

/// The nine products Q^n P^m, n, m in {0,1,2}, in (n, m) row-major order.
std::vector<Matrix> n2_products(double angle = kN2ShiftAngle);

/// Group generated by Q and the order-3 P: the 27 elements omega^k Q^n P^m.
SymmetrizingGroup build_n2_group();

/// Weyl-Heisenberg group {omega^c X^a Z^b} on C^d, order d^3 ({1} for d = 1).
std::vector<Matrix> weyl_heisenberg_group(int d);

/// Block-structured unitaries U (+_J 1_{n_J} x g_J) U^dagger over the product of
/// the per-irrep Weyl-Heisenberg groups.
SymmetrizingGroup build_glued_group(const IrrepBasis& basis, const DecompositionSummary& summary);

/// Real-orthonormal Hermitian basis of the real Lie algebra generated by i*h.
std::vector<Matrix> hermitian_lie_basis(std::span<const Matrix> hermitian_generators, double tol = kDefaultTol);

struct MonteCarloTwirl {
  Matrix mean;
  /// Standard error of the mean in HS norm: sqrt(sum |Y_i - mean|^2 / (n (n-1))).
  double standard_error = 0.0;
  std::size_t samples = 0;
};

struct MonteCarloOptions {
  std::size_t samples = 100000;
  /// Number of exponentials multiplied per sample.
  int walk_length = 8;
  /// Standard deviation of the Gaussian coefficients.
  double coefficient_scale = 2.0;
};

/// Average of U x U^dagger with U = prod_k exp(i sum_a c_ka h_a), c ~ N(0, scale^2).
MonteCarloTwirl monte_carlo_twirl(const Matrix& x, std::span<const Matrix> hermitian_basis, Rng& rng,
                                  const MonteCarloOptions& options = {});

}  // namespace dfs
