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
// gatework.hpp: logical operators on the code, universality, invariant Hamiltonians

#pragma once

#include <span>

#include "dfs/code_symmetry.hpp"
#include "dfs/operator_core.hpp"

namespace dfs {

/// An operator on the code space, n0 x n0.
struct LogicalOperator {
  Matrix entries;

  std::size_t code_dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// V^dagger x V.
LogicalOperator restrict_to_code(const Matrix& x, const CodeSubspace& code);

struct UniversalityReport {
  std::size_t closure_dim = 0;
  std::size_t required_dim = 0;  // n0^2
  bool verdict = false;
  std::size_t generator_count_used = 0;
};

/// Symmetrizes each Hamiltonian, restricts it to the code and closes
/// {i h|_C} together with i*1 under commutators over the reals. The verdict is
/// true iff the closure is all of u(C).
UniversalityReport is_universal_on_code(std::span<const Matrix> hamiltonians, const CodeSubspace& code,
                                        const OperatorBasis& commutant_basis, double tol = 1e-9);

/// H = V log(target) V^dagger, the representative of its gauge orbit supported on
/// the code. Requires the error algebra to be closed under adjoint, which makes
/// code-supported operators invariant; otherwise throws AssumptionViolated.
Matrix synthesize_invariant_hamiltonian(const LogicalOperator& target, const CodeSubspace& code,
                                        const OperatorBasis& error_algebra, double tol = 1e-9);

/// pi(h1) == pi(h2) within tol (HS norm).
bool gauge_orbit_check(const Matrix& h1, const Matrix& h2, const OperatorBasis& commutant_basis,
                       double tol = 1e-9);

/// dim Ker pi = d^2 - dim commutant.
std::size_t gauge_kernel_dim(const OperatorBasis& commutant_basis);

}  // namespace dfs
