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
// rep_models.hpp: collective decoherence, permutation representations, dephasing

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dfs/operator_core.hpp"

namespace dfs {

/// Spin label J stored as the integer 2J.
struct Spin {
  int twice = 0;

  static constexpr Spin from_twice(int twice_j) { return Spin{twice_j}; }
  constexpr double value() const { return twice / 2.0; }
  constexpr int irrep_dim() const { return twice + 1; }
  /// J(J+1), the Casimir eigenvalue.
  constexpr double casimir_eigenvalue() const { return value() * (value() + 1.0); }
  auto operator<=>(const Spin&) const = default;
};

std::string to_string(Spin j);

// Single-site matrices. Raw Paulis: sigma_plus = |0><1| raises the sigma_z eigenvalue.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();
Matrix sigma_minus();

/// 1 x ... x op (at site) x ... x 1, site 0 leftmost (slowest index).
Matrix embed_site_operator(const Matrix& op, int site, int n_sites);

/// Collective generators on (C^d)^{xN}.
///
/// For qubits the generators are {S^z, S^+, S^-} with S^a = sum_j sigma^a_j built
/// from raw Paulis, so [S^z, S^+] = 2 S^+. For d > 2 they are the collective
/// versions of the sl(d) basis {E_kk - E_{k+1,k+1}} then {E_ab, a != b}; the
/// closed-form bookkeeping below is qubit-only.
struct CollectiveModel {
  int n_sites = 0;
  int local_dim = 0;
  std::size_t dim = 0;
  std::vector<Matrix> generators;
  std::vector<std::string> generator_names;

  bool is_qubit() const { return local_dim == 2; }
  // Qubit accessors; throw InvalidArgument for d != 2.
  const Matrix& sz() const;
  const Matrix& splus() const;
  const Matrix& sminus() const;
  /// Hermitian combinations S^x = S^+ + S^-, S^y = -i(S^+ - S^-), S^z.
  std::vector<Matrix> hermitian_generators() const;
};

CollectiveModel collective_generators(int n_sites, int local_dim = 2, std::size_t dim_cap = kDefaultDimCap);

/// nu(sigma): the basis state at site j moves to site sigma[j] (0-based one-line
/// notation). nu(sigma) nu(tau) = nu(sigma o tau).
Matrix permutation_operator(std::span<const int> sigma, int n_sites, int local_dim = 2);

/// All permutations of {0..n-1} in lexicographic one-line order.
std::vector<std::vector<int>> all_permutations(int n);

bool is_permutation(std::span<const int> sigma, int n);
std::vector<int> compose(std::span<const int> sigma, std::span<const int> tau);
std::vector<int> inverse(std::span<const int> sigma);

/// The ladder J = N/2, N/2 - 1, ..., down to 0 or 1/2 (ascending order).
std::vector<Spin> spin_ladder(int n_sites);

/// n_N(J) = (2J+1) N! / [(N/2+J+1)! (N/2-J)!]. Throws InvalidArgument if J is
/// not on the ladder for N.
std::uint64_t multiplicity(int n_sites, Spin j);

/// (N+3)(N+2)(N+1)/6, the dimension of the totally symmetric operators.
std::uint64_t symmetric_operator_dim(int n_sites);

struct DecompositionSummary {
  std::vector<Spin> labels;                   // ascending J
  std::vector<std::uint64_t> multiplicities;  // n_J
  std::vector<int> irrep_dims;                // d_J = 2J + 1
  std::size_t total_dim = 0;

  std::uint64_t sum_n_times_d() const;
  std::uint64_t sum_n_squared() const;
  std::uint64_t sum_d_squared() const;
  /// n_J for a label, 0 if absent.
  std::uint64_t multiplicity_of(Spin j) const;
};

/// Qubit collective decomposition from the closed-form multiplicities.
DecompositionSummary collective_decomposition(int n_sites);

/// S.S with halved Paulis, eigenvalues J(J+1). Qubits only.
Matrix casimir(const CollectiveModel& model);

/// Commuting Hermitian generators with their common eigenspaces.
struct AbelianModel {
  std::size_t dim = 0;
  std::vector<Matrix> generators;
  std::vector<Matrix> projectors;                       // Pi_s
  std::vector<std::vector<double>> eigenvalue_table;    // [sector][generator]

  std::size_t sector_count() const { return projectors.size(); }
};

/// Splits the space into common eigenspaces of commuting Hermitian generators.
/// Sectors are ordered by eigenvalue tuple, lexicographically descending, so
/// that for sigma_z generators the order follows the computational basis.
AbelianModel abelian_model(std::span<const Matrix> generators, double tol = 1e-9);

/// Generators sigma_z at each site.
AbelianModel dephasing_model(int n_sites, std::size_t dim_cap = kDefaultDimCap);

/// 1 - 2 sum_s m_s Pi_s.
Matrix z2m_representation(std::span<const std::uint8_t> bits, const AbelianModel& model);

}  // namespace dfs
