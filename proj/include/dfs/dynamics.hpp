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
// dynamics.hpp: exact system-environment evolution, pulsed symmetrization, ancilla scheme

#pragma once

#include <optional>
#include <vector>

#include "dfs/code_symmetry.hpp"
#include "dfs/operator_core.hpp"
#include "dfs/random.hpp"
#include "dfs/rep_models.hpp"

namespace dfs {

inline constexpr std::size_t kJointDimCap = 512;

struct Coupling {
  Matrix system_op;  // S_alpha
  Matrix env_op;     // B_alpha
};

/// H = H_S x 1 + 1 x H_E + sum_alpha S_alpha x B_alpha. System index is the
/// slow one in the joint space.
struct NoiseModel {
  std::size_t system_dim = 0;
  std::size_t env_dim = 0;
  Matrix h_system;
  Matrix h_env;
  std::vector<Coupling> couplings;

  /// Throws on shape errors, non-Hermitian parts, or (when an error algebra is
  /// supplied) coupling operators outside its span.
  void validate(const OperatorBasis* error_algebra = nullptr, double tol = 1e-9) const;
};

/// Random collective model: H_S a random Hermitian element of the error algebra
/// (when h_system_in_algebra) or a random Hermitian otherwise; couplings
/// (S^x, B_x), (S^y, B_y), (S^z, B_z) with unit-norm random B scaled by
/// coupling_strength; H_E unit-norm random.
NoiseModel random_collective_noise_model(const CollectiveModel& model, const OperatorBasis& error_algebra,
                                         std::size_t env_dim, double coupling_strength, Rng& rng,
                                         bool h_system_in_algebra = true);

Matrix build_joint_hamiltonian(const NoiseModel& model);

/// Cached eigendecomposition of a Hermitian h; unitary(t) = exp(-i t h).
class Propagator {
 public:
  explicit Propagator(const Matrix& h, double tol = 1e-9);

  Matrix unitary(double t) const;
  Vector apply(const Vector& state, double t) const;
  std::size_t dim() const { return static_cast<std::size_t>(vectors_.rows()); }

 private:
  Matrix vectors_;
  Eigen::VectorXd values_;
};

/// exp(-i t h) state.
Vector evolve(const Vector& state, const Matrix& h, double t);

struct CodeMetrics {
  double leakage = 0.0;  // 1 - weight in C x environment
  double purity = 1.0;   // Tr rho_S^2
  std::optional<double> fidelity;  // <ref| rho_S |ref> when a reference is given
};

CodeMetrics code_metrics(const Vector& joint_state, const CodeSubspace& code, std::size_t env_dim,
                         const std::optional<Vector>& reference_system_state = std::nullopt);

/// Reduced system density matrix of a joint pure state.
Matrix reduced_system_state(const Vector& joint_state, std::size_t system_dim, std::size_t env_dim);

enum class CycleOrdering { kListOrder, kPalindromic };

/// A cycle visits every group element once (list order) or forward then
/// backward (palindromic). Each visit is: pulse e_j, free evolution for tau_p,
/// pulse e_j^dagger, then tau_op of evolution under the noise Hamiltonian alone.
struct PulseSchedule {
  SymmetrizingGroup group;
  double tau_p = 0.0;
  double tau_op = 0.0;
  double total_time = 0.0;  // free-evolution time, a whole number of cycles
  CycleOrdering ordering = CycleOrdering::kListOrder;

  std::size_t visits_per_cycle() const;
  double cycle_time() const { return static_cast<double>(visits_per_cycle()) * tau_p; }
  /// Throws InvalidArgument on an invalid schedule.
  std::size_t cycles() const;
};

PulseSchedule make_pulse_schedule(SymmetrizingGroup group, double tau_p, std::size_t cycles, double tau_op = 0.0,
                                  CycleOrdering ordering = CycleOrdering::kListOrder);

struct Trajectory {
  std::vector<double> times;   // elapsed time including pulse durations
  std::vector<Vector> states;  // system state, or joint state when a noise model is given
};

/// Samples the state at t = 0 and after every full cycle.
Trajectory pulse_sequence_evolution(const Matrix& h_gate, const PulseSchedule& schedule, const Vector& initial,
                                    const std::optional<NoiseModel>& noise = std::nullopt);

/// Coefficients of X = sum_sigma x_sigma nu(sigma) over S_N in lexicographic order.
struct AncillaProgram {
  int n_sites = 0;
  int local_dim = 2;
  std::vector<std::vector<int>> permutations;
  std::vector<Complex> coefficients;

  static AncillaProgram from_coefficients(int n_sites, std::vector<Complex> coefficients, int local_dim = 2);
  /// exp(i h) in the group algebra for a random Hermitian h (h_{sigma^-1} = conj h_sigma).
  static AncillaProgram random_unitary(int n_sites, Rng& rng, int local_dim = 2);

  Matrix target() const;
  /// Throws NotUnitary unless X is unitary and |X> is normalized.
  void validate(double tol = 1e-9) const;
};

struct AncillaOutcome {
  double success_probability = 0.0;
  Vector conditional_state;
  bool input_in_code = true;
};

/// Prepares psi x |X>, applies W = sum nu(sigma) x |sigma><sigma|, projects the
/// ancilla on the uniform superposition. input_in_code is false when a code is
/// supplied and psi has weight outside it.
AncillaOutcome ancilla_scheme(const AncillaProgram& program, const Vector& psi,
                              const CodeSubspace* code = nullptr, double tol = 1e-9);

}  // namespace dfs
