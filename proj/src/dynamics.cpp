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
#include "dfs/dynamics.hpp"

#include <cmath>
#include <string>

namespace dfs {

namespace {

using Index = Eigen::Index;

Matrix identity(std::size_t d) {
  return Matrix::Identity(static_cast<Index>(d), static_cast<Index>(d));
}

double spectral_norm_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

void require_dim(const Matrix& m, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != dim || m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                            std::to_string(dim) + " operator");
  }
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

}  // namespace

void NoiseModel::validate(const OperatorBasis* error_algebra, double tol) const {
  if (system_dim == 0 || env_dim == 0) {
    throw InvalidArgument("NoiseModel: dimensions must be positive");
  }
  check_dim_cap(system_dim * env_dim, kJointDimCap);
  require_dim(h_system, system_dim, "NoiseModel H_S");
  require_dim(h_env, env_dim, "NoiseModel H_E");
  if (!is_hermitian(h_system, tol) || !is_hermitian(h_env, tol)) {
    throw NotHermitian("NoiseModel: H_S and H_E must be Hermitian");
  }
  for (const auto& c : couplings) {
    require_dim(c.system_op, system_dim, "NoiseModel S_alpha");
    require_dim(c.env_op, env_dim, "NoiseModel B_alpha");
    if (!is_hermitian(c.env_op, tol)) {
      throw NotHermitian("NoiseModel: B_alpha must be Hermitian");
    }
    if (error_algebra != nullptr && error_algebra->residual(c.system_op) > tol * std::max(1.0, hs_norm(c.system_op))) {
      throw InvalidArgument("NoiseModel: coupling operator lies outside the error algebra");
    }
  }
}

NoiseModel random_collective_noise_model(const CollectiveModel& model, const OperatorBasis& error_algebra,
                                         std::size_t env_dim, double coupling_strength, Rng& rng,
                                         bool h_system_in_algebra) {
  NoiseModel noise;
  noise.system_dim = model.dim;
  noise.env_dim = env_dim;
  if (h_system_in_algebra) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix h = Matrix::Zero(static_cast<Index>(model.dim), static_cast<Index>(model.dim));
    for (const auto& b : error_algebra.elements()) {
      const double re = normal(rng);
      const double im = normal(rng);
      h += Complex(re, im) * b;
    }
    h = ((h + h.adjoint()) / 2.0).eval();
    const double norm = spectral_norm_hermitian(h);
    noise.h_system = norm > 0.0 ? Matrix(h / norm) : h;
  } else {
    noise.h_system = random_hermitian_unit_norm(model.dim, rng);
  }
  noise.h_env = random_hermitian_unit_norm(env_dim, rng);
  for (const auto& s : model.hermitian_generators()) {
    noise.couplings.push_back(Coupling{s, coupling_strength * random_hermitian_unit_norm(env_dim, rng)});
  }
  return noise;
}

Matrix build_joint_hamiltonian(const NoiseModel& model) {
  model.validate();
  Matrix h = kron(model.h_system, identity(model.env_dim)) + kron(identity(model.system_dim), model.h_env);
  for (const auto& c : model.couplings) {
    h += kron(c.system_op, c.env_op);
  }
  return h;
}

Propagator::Propagator(const Matrix& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw NotHermitian("Propagator: generator is not Hermitian");
  }
  check_dim_cap(static_cast<std::size_t>(h.rows()), kJointDimCap);
  Eigen::SelfAdjointEigenSolver<Matrix> eig((h + h.adjoint()) / 2.0);
  vectors_ = eig.eigenvectors();
  values_ = eig.eigenvalues();
}

Matrix Propagator::unitary(double t) const {
  const Eigen::VectorXcd phases = values_.unaryExpr([t](double v) { return std::polar(1.0, -t * v); });
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Vector Propagator::apply(const Vector& state, double t) const {
  if (state.size() != vectors_.rows()) {
    throw DimensionMismatch("Propagator::apply: state dimension differs from generator");
  }
  const Eigen::VectorXcd phases = values_.unaryExpr([t](double v) { return std::polar(1.0, -t * v); });
  const Vector coeffs = vectors_.adjoint() * state;
  return vectors_ * phases.cwiseProduct(coeffs);
}

Vector evolve(const Vector& state, const Matrix& h, double t) { return Propagator(h).apply(state, t); }

Matrix reduced_system_state(const Vector& joint_state, std::size_t system_dim, std::size_t env_dim) {
  if (static_cast<std::size_t>(joint_state.size()) != system_dim * env_dim) {
    throw DimensionMismatch("reduced_system_state: joint state has the wrong length");
  }
  // Column-major map: entry (k, s) is the amplitude of |s>|k>.
  const Eigen::Map<const Matrix> amps(joint_state.data(), static_cast<Index>(env_dim),
                                      static_cast<Index>(system_dim));
  return amps.transpose() * amps.conjugate();
}

CodeMetrics code_metrics(const Vector& joint_state, const CodeSubspace& code, std::size_t env_dim,
                         const std::optional<Vector>& reference_system_state) {
  if (env_dim == 0 || static_cast<std::size_t>(joint_state.size()) != code.ambient_dim * env_dim) {
    throw DimensionMismatch("code_metrics: joint state does not match code x environment");
  }
  const Eigen::Map<const Matrix> amps(joint_state.data(), static_cast<Index>(env_dim),
                                      static_cast<Index>(code.ambient_dim));
  const Matrix m = amps.transpose();  // system x env
  CodeMetrics out;
  out.leakage = std::max(0.0, m.squaredNorm() - (code.isometry.adjoint() * m).squaredNorm());
  const Matrix rho = m * m.adjoint();
  out.purity = rho.squaredNorm();
  if (reference_system_state) {
    if (reference_system_state->size() != m.rows()) {
      throw DimensionMismatch("code_metrics: reference state has the wrong length");
    }
    out.fidelity = std::real(reference_system_state->dot(rho * *reference_system_state));
  }
  return out;
}

std::size_t PulseSchedule::visits_per_cycle() const {
  const std::size_t n = group.elements.size();
  return ordering == CycleOrdering::kPalindromic ? 2 * n : n;
}

std::size_t PulseSchedule::cycles() const {
  if (group.elements.empty()) {
    throw InvalidArgument("PulseSchedule: empty group");
  }
  if (!(tau_p > 0.0)) {
    throw InvalidArgument("PulseSchedule: tau_p must be positive");
  }
  if (tau_op < 0.0 || tau_op >= tau_p) {
    throw InvalidArgument("PulseSchedule: need 0 <= tau_op < tau_p");
  }
  const double ratio = total_time / cycle_time();
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw InvalidArgument("PulseSchedule: total_time is not a whole number of cycles");
  }
  return static_cast<std::size_t>(rounded);
}

PulseSchedule make_pulse_schedule(SymmetrizingGroup group, double tau_p, std::size_t cycles, double tau_op,
                                  CycleOrdering ordering) {
  PulseSchedule schedule;
  schedule.group = std::move(group);
  schedule.tau_p = tau_p;
  schedule.tau_op = tau_op;
  schedule.ordering = ordering;
  schedule.total_time = static_cast<double>(cycles) * schedule.cycle_time();
  schedule.cycles();
  return schedule;
}

Trajectory pulse_sequence_evolution(const Matrix& h_gate, const PulseSchedule& schedule, const Vector& initial,
                                    const std::optional<NoiseModel>& noise) {
  const std::size_t cycles = schedule.cycles();
  if (!is_hermitian(h_gate, 1e-9)) {
    throw NotHermitian("pulse_sequence_evolution: gate Hamiltonian is not Hermitian");
  }
  const auto d = static_cast<std::size_t>(h_gate.rows());
  if (static_cast<std::size_t>(schedule.group.elements.front().rows()) != d) {
    throw DimensionMismatch("pulse_sequence_evolution: group and gate dimensions differ");
  }
  const std::size_t env = noise ? noise->env_dim : 1;
  if (noise && noise->system_dim != d) {
    throw DimensionMismatch("pulse_sequence_evolution: noise model acts on a different system");
  }
  const std::size_t total_dim = d * env;
  check_dim_cap(total_dim, kJointDimCap);
  if (static_cast<std::size_t>(initial.size()) != total_dim) {
    throw DimensionMismatch("pulse_sequence_evolution: initial state has the wrong length");
  }

  Matrix h_total = kron(h_gate, identity(env));
  Matrix h_noise = Matrix::Zero(static_cast<Index>(total_dim), static_cast<Index>(total_dim));
  if (noise) {
    h_noise = build_joint_hamiltonian(*noise);
    h_total += h_noise;
  }
  const Matrix free = Propagator(h_total).unitary(schedule.tau_p);
  const Matrix pulse_window =
      schedule.tau_op > 0.0 ? Propagator(h_noise).unitary(schedule.tau_op) : identity(total_dim);

  std::vector<std::size_t> order;
  const std::size_t n = schedule.group.elements.size();
  for (std::size_t j = 0; j < n; ++j) order.push_back(j);
  if (schedule.ordering == CycleOrdering::kPalindromic) {
    for (std::size_t j = n; j-- > 0;) order.push_back(j);
  }
  Matrix cycle = identity(total_dim);
  for (std::size_t j : order) {
    const Matrix e = kron(schedule.group.elements[j], identity(env));
    cycle = pulse_window * e.adjoint() * free * e * cycle;
  }

  Trajectory traj;
  const double step = schedule.cycle_time() + static_cast<double>(order.size()) * schedule.tau_op;
  traj.times.reserve(cycles + 1);
  traj.states.reserve(cycles + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(initial);
  Vector state = initial;
  for (std::size_t c = 1; c <= cycles; ++c) {
    state = cycle * state;
    traj.times.push_back(static_cast<double>(c) * step);
    traj.states.push_back(state);
  }
  return traj;
}

AncillaProgram AncillaProgram::from_coefficients(int n_sites, std::vector<Complex> coefficients, int local_dim) {
  if (n_sites < 1 || n_sites > 6) {
    throw InvalidArgument("AncillaProgram: N must lie in [1, 6]");
  }
  AncillaProgram program;
  program.n_sites = n_sites;
  program.local_dim = local_dim;
  program.permutations = all_permutations(n_sites);
  if (coefficients.size() != program.permutations.size()) {
    throw DimensionMismatch("AncillaProgram: expected " + std::to_string(program.permutations.size()) +
                            " coefficients");
  }
  program.coefficients = std::move(coefficients);
  return program;
}

AncillaProgram AncillaProgram::random_unitary(int n_sites, Rng& rng, int local_dim) {
  const auto perms = all_permutations(n_sites);
  const std::size_t k = perms.size();
  const auto index_of = [&perms](const std::vector<int>& p) {
    for (std::size_t i = 0; i < perms.size(); ++i) {
      if (perms[i] == p) return i;
    }
    throw InvalidArgument("AncillaProgram: permutation not found");
  };

  // Hermitian element of the group algebra: h_{sigma^-1} = conj(h_sigma).
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> h(k, Complex(0.0, 0.0));
  std::vector<bool> set(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (set[i]) continue;
    const std::size_t inv = index_of(inverse(perms[i]));
    const double re = normal(rng);
    const double im = inv == i ? 0.0 : normal(rng);
    h[i] = Complex(re, im);
    h[inv] = std::conj(h[i]);
    set[i] = set[inv] = true;
  }
  // Left-regular representation: (L_h)_{rho, tau} = h_{rho tau^-1}.
  Matrix reg(static_cast<Index>(k), static_cast<Index>(k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t t = 0; t < k; ++t) {
      reg(static_cast<Index>(r), static_cast<Index>(t)) = h[index_of(compose(perms[r], inverse(perms[t])))];
    }
  }
  const Matrix x = Propagator(reg).unitary(-1.0);  // exp(+i L_h)
  const std::size_t identity_index = 0;            // lexicographic order starts at the identity
  std::vector<Complex> coeffs(k);
  for (std::size_t r = 0; r < k; ++r) {
    coeffs[r] = x(static_cast<Index>(r), static_cast<Index>(identity_index));
  }
  return from_coefficients(n_sites, std::move(coeffs), local_dim);
}

Matrix AncillaProgram::target() const {
  Matrix x;
  for (std::size_t i = 0; i < permutations.size(); ++i) {
    const Matrix nu = permutation_operator(permutations[i], n_sites, local_dim);
    if (i == 0) x = Matrix::Zero(nu.rows(), nu.cols());
    x += coefficients[i] * nu;
  }
  return x;
}

void AncillaProgram::validate(double tol) const {
  double norm_sq = 0.0;
  for (const auto& c : coefficients) norm_sq += std::norm(c);
  if (std::abs(norm_sq - 1.0) > tol) {
    throw NotUnitary("AncillaProgram: |X> is not normalized (sum |x|^2 = " + std::to_string(norm_sq) + ")");
  }
  if (!is_unitary(target(), tol)) {
    throw NotUnitary("AncillaProgram: X is not unitary");
  }
}

AncillaOutcome ancilla_scheme(const AncillaProgram& program, const Vector& psi, const CodeSubspace* code,
                              double tol) {
  program.validate(tol);
  const std::size_t k = factorial(program.n_sites);
  const std::size_t d = static_cast<std::size_t>(std::llround(std::pow(program.local_dim, program.n_sites)));
  if (static_cast<std::size_t>(psi.size()) != d) {
    throw DimensionMismatch("ancilla_scheme: psi has the wrong length");
  }
  check_dim_cap(d * k, kJointDimCap);

  AncillaOutcome out;
  if (code != nullptr) {
    const double weight = (code->isometry.adjoint() * psi).squaredNorm();
    out.input_in_code = std::abs(psi.squaredNorm() - weight) <= tol;
  }

  // |Psi_0> = psi x |X>, system index slow.
  Vector ancilla(static_cast<Index>(k));
  for (std::size_t i = 0; i < k; ++i) ancilla(static_cast<Index>(i)) = program.coefficients[i];
  const Vector psi0 = kron(psi, ancilla);

  // W = sum_sigma nu(sigma) x |sigma><sigma|.
  const auto joint = static_cast<Index>(d * k);
  Matrix w = Matrix::Zero(joint, joint);
  for (std::size_t i = 0; i < k; ++i) {
    Matrix proj = Matrix::Zero(static_cast<Index>(k), static_cast<Index>(k));
    proj(static_cast<Index>(i), static_cast<Index>(i)) = 1.0;
    w += kron(permutation_operator(program.permutations[i], program.n_sites, program.local_dim), proj);
  }
  const Vector after = w * psi0;

  // (1 x <0|) with |0> the uniform superposition.
  const Vector zero = Vector::Constant(static_cast<Index>(k), 1.0 / std::sqrt(static_cast<double>(k)));
  const Matrix bra = kron(identity(d), Matrix(zero.adjoint()));
  const Vector projected = bra * after;
  out.success_probability = projected.squaredNorm();
  out.conditional_state = out.success_probability > 0.0 ? Vector(projected / projected.norm()) : projected;
  return out;
}

}  // namespace dfs
