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
#include "dfs/gatework.hpp"

#include <string>
#include <vector>

namespace dfs {

LogicalOperator restrict_to_code(const Matrix& x, const CodeSubspace& code) {
  if (static_cast<std::size_t>(x.rows()) != code.ambient_dim || x.rows() != x.cols()) {
    throw DimensionMismatch("restrict_to_code: operator dimension " + std::to_string(x.rows()) +
                            " differs from ambient dimension " + std::to_string(code.ambient_dim));
  }
  return LogicalOperator{code.isometry.adjoint() * x * code.isometry};
}

UniversalityReport is_universal_on_code(std::span<const Matrix> hamiltonians, const CodeSubspace& code,
                                        const OperatorBasis& commutant_basis, double tol) {
  if (code.empty()) {
    throw InvalidArgument("is_universal_on_code: empty code");
  }
  const auto n0 = static_cast<Eigen::Index>(code.code_dim);
  std::vector<Matrix> generators;
  for (const auto& h : hamiltonians) {
    if (!is_hermitian(h, tol)) {
      throw NotHermitian("is_universal_on_code: Hamiltonian is not Hermitian within tol");
    }
    const Matrix restricted = restrict_to_code(commutant_projection(h, commutant_basis), code).entries;
    generators.push_back(Complex(0.0, 1.0) * (restricted + restricted.adjoint()) / 2.0);
  }
  // Gates live in U(C), so the phase direction is adjoined explicitly.
  generators.push_back(Complex(0.0, 1.0) * Matrix::Identity(n0, n0));

  UniversalityReport report;
  report.required_dim = code.code_dim * code.code_dim;
  report.generator_count_used = hamiltonians.size();
  report.closure_dim = real_lie_closure(generators, kDefaultTol, 2 * report.required_dim).size();
  report.verdict = report.closure_dim == report.required_dim;
  return report;
}

Matrix synthesize_invariant_hamiltonian(const LogicalOperator& target, const CodeSubspace& code,
                                        const OperatorBasis& error_algebra, double tol) {
  if (code.empty()) {
    throw InvalidArgument("synthesize_invariant_hamiltonian: empty code");
  }
  if (target.code_dim() != code.code_dim || target.entries.rows() != target.entries.cols()) {
    throw DimensionMismatch("synthesize_invariant_hamiltonian: target does not act on the code");
  }
  if (error_algebra.dim() != code.ambient_dim) {
    throw DimensionMismatch("synthesize_invariant_hamiltonian: error algebra dimension differs from code");
  }
  for (const auto& x : error_algebra.elements()) {
    if (error_algebra.residual(x.adjoint()) > tol) {
      throw AssumptionViolated(
          "synthesize_invariant_hamiltonian: error algebra is not closed under adjoint, "
          "code-supported operators need not be invariant");
    }
  }
  const Matrix h = principal_log_unitary(target.entries, tol);
  const Matrix big = code.isometry * h * code.isometry.adjoint();
  return (big + big.adjoint()) / 2.0;
}

bool gauge_orbit_check(const Matrix& h1, const Matrix& h2, const OperatorBasis& commutant_basis, double tol) {
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols()) {
    throw DimensionMismatch("gauge_orbit_check: operator shapes differ");
  }
  return hs_norm(commutant_projection(h1 - h2, commutant_basis)) <= tol;
}

std::size_t gauge_kernel_dim(const OperatorBasis& commutant_basis) {
  return commutant_basis.dim() * commutant_basis.dim() - commutant_basis.size();
}

}  // namespace dfs
