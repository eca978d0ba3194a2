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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Reference values are recomputed here with
// plain Eigen and counting arguments rather than through the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dfs/code_symmetry.hpp"
#include "dfs/dynamics.hpp"
#include "dfs/gatework.hpp"
#include "dfs/random.hpp"
#include "dfs/rep_models.hpp"

namespace {

using dfs::Complex;
using dfs::Matrix;
using dfs::Vector;

constexpr Complex kI{0.0, 1.0};

// -- oracles --------------------------------------------------------------------

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

/// Multiplicity of total spin J = twice_j / 2 in N spin-1/2 sites, by weight counting.
double weight_count_multiplicity(int n, int twice_j) {
  const auto count = [n](int twice_m) {
    if ((n + twice_m) % 2 != 0 || twice_m > n) return 0.0;
    return binom(n, (n + twice_m) / 2);
  };
  return count(twice_j) - count(twice_j + 2);
}

Matrix eye(Eigen::Index d) { return Matrix::Identity(d, d); }

/// Orthonormal basis of the range of the columns of a, by SVD.
Matrix range_basis(const Matrix& a, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double cutoff = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Dimension of the common kernel of the operators, from the SVD of the stack.
Eigen::Index stacked_kernel_dim(const std::vector<Matrix>& ops) {
  const Eigen::Index d = ops.front().cols();
  Matrix stack(d * static_cast<Eigen::Index>(ops.size()), d);
  for (std::size_t k = 0; k < ops.size(); ++k) stack.middleRows(static_cast<Eigen::Index>(k) * d, d) = ops[k];
  Eigen::JacobiSVD<Matrix> svd(stack);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()(i) > 1e-9 ? 1 : 0;
  return d - rank;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix vec_columns(const std::vector<Matrix>& ops) {
  Matrix out(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(ops[k]);
  return out;
}

/// Frobenius distance between the orthogonal projectors onto range(q1) and range(q2),
/// |P1 - P2|^2 = |(1 - P1) q2|^2 + |(1 - P2) q1|^2.
double projector_distance(const Matrix& q1, const Matrix& q2) {
  const Matrix r2 = q2 - q1 * (q1.adjoint() * q2);
  const Matrix r1 = q1 - q2 * (q2.adjoint() * q1);
  return std::sqrt(r1.squaredNorm() + r2.squaredNorm());
}

std::vector<Matrix> permutation_operators(int n) {
  std::vector<Matrix> out;
  for (const auto& s : dfs::all_permutations(n)) out.push_back(dfs::permutation_operator(s, n));
  return out;
}

/// Orthogonal projection of x onto span{ops} in the HS geometry.
Matrix span_projection(const Matrix& x, const Matrix& orthonormal_vec_basis) {
  const Vector coeffs = orthonormal_vec_basis.adjoint() * vec(x);
  const Vector v = orthonormal_vec_basis * coeffs;
  return Eigen::Map<const Matrix>(v.data(), x.rows(), x.cols());
}

/// exp(-i t h) for Hermitian h, by eigendecomposition.
struct EigenPropagator {
  explicit EigenPropagator(const Matrix& h) : es(h) {}
  Matrix unitary(double t) const {
    const Vector phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  Vector apply(const Vector& v, double t) const {
    const Vector phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.cwiseProduct(es.eigenvectors().adjoint() * v);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
};

Matrix hermitian_part(const Matrix& m) { return ((m + m.adjoint()) / 2.0).eval(); }

/// Real dimension of the real Lie algebra generated by the anti-Hermitian 2x2
/// matrices, by Gram-Schmidt on their real coordinates.
std::size_t real_lie_dim(const std::vector<Matrix>& anti_hermitian) {
  std::vector<Eigen::VectorXd> basis;
  std::vector<Matrix> elements;
  const auto coords = [](const Matrix& m) {
    Eigen::VectorXd r(2 * m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      r(2 * i) = m.data()[i].real();
      r(2 * i + 1) = m.data()[i].imag();
    }
    return r;
  };
  const auto try_add = [&](const Matrix& m) {
    Eigen::VectorXd r = coords(m);
    const double scale = std::max(1.0, r.norm());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) r -= b.dot(r) * b;
    }
    if (r.norm() <= 1e-9 * scale) return false;
    basis.push_back(r / r.norm());
    elements.push_back(m);
    return true;
  };
  for (const auto& g : anti_hermitian) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Matrix> current = elements;
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        grew = try_add(current[a] * current[b] - current[b] * current[a]) || grew;
      }
    }
  }
  return basis.size();
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Leakage 1 - |(V V^dagger x 1) s|^2 and purity of the reduced system state.
struct Metrics {
  double leakage;
  double purity;
};

Metrics joint_metrics(const Vector& s, const Matrix& isometry, Eigen::Index sys, Eigen::Index env) {
  const Matrix psi = Eigen::Map<const Matrix>(s.data(), env, sys).transpose();  // rows: system
  const Matrix rho = psi * psi.adjoint();
  const double in_code = isometry.cols() == 0 ? 0.0 : (isometry.adjoint() * psi).squaredNorm();
  return {1.0 - in_code, (rho * rho).trace().real()};
}

// -- reporting ------------------------------------------------------------------

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// -- criteria -------------------------------------------------------------------

void code_dimensions(Outcome& out) {
  const int expected[] = {0, 1, 0, 2, 0, 5};
  for (int n : {2, 3, 4, 6}) {
    const auto model = dfs::collective_generators(n);
    const auto code = dfs::find_code(model.generators);
    const double formula = n % 2 == 0 ? weight_count_multiplicity(n, 0) : 0.0;
    const auto kernel = stacked_kernel_dim(model.generators);
    out.require(static_cast<double>(code.code_dim) == formula, "N=" + std::to_string(n) + " formula");
    out.require(static_cast<Eigen::Index>(code.code_dim) == kernel, "N=" + std::to_string(n) + " null space");
    out.require(static_cast<int>(code.code_dim) == expected[n - 1], "N=" + std::to_string(n) + " value");
    if (n % 2 == 0) {
      out.require(static_cast<double>(dfs::multiplicity(n, dfs::Spin{0})) == formula, "multiplicity()");
    }
    out.detail << " N=" << n << ":" << code.code_dim;
  }
}

void dimension_identities(Outcome& out) {
  double worst_distance = 0.0;
  for (int n = 1; n <= 5; ++n) {
    const auto model = dfs::collective_generators(n);
    const auto algebra = dfs::associative_closure(model.generators);
    const auto comm = dfs::commutant(dfs::OperatorBasis::from_span(model.dim, model.generators));
    double sum_nd = 0.0, sum_n2 = 0.0;
    for (int twice_j = n % 2; twice_j <= n; twice_j += 2) {
      const double m = weight_count_multiplicity(n, twice_j);
      sum_nd += m * (twice_j + 1);
      sum_n2 += m * m;
    }
    const std::string tag = "N=" + std::to_string(n);
    out.require(algebra.size() == static_cast<std::size_t>((n + 3) * (n + 2) * (n + 1) / 6), tag + " algebra dim");
    out.require(sum_nd == std::ldexp(1.0, n), tag + " sum n d");
    out.require(static_cast<double>(comm.size()) == sum_n2, tag + " commutant dim");
    const auto summary = dfs::collective_decomposition(n);
    out.require(static_cast<double>(summary.sum_n_squared()) == sum_n2, tag + " summary sum n^2");
    const Matrix q_perm = range_basis(vec_columns(permutation_operators(n)));
    const Matrix q_comm = range_basis(vec_columns(comm.elements()));
    const double distance = projector_distance(q_perm, q_comm);
    worst_distance = std::max(worst_distance, distance);
    out.require(distance <= 1e-8, tag + " commutant = permutation span");
  }
  out.detail << " projector distance " << sci(worst_distance);
}

void symmetrizer_properties(Outcome& out) {
  auto rng = dfs::make_rng(3003);
  double worst = 0.0;
  for (int n : {2, 4}) {
    const auto model = dfs::collective_generators(n);
    const auto comm = dfs::commutant(dfs::OperatorBasis::from_span(model.dim, model.generators));
    const auto lie = dfs::lie_closure(model.generators);
    const Matrix q_perm = range_basis(vec_columns(permutation_operators(n)));
    for (const auto& l : lie.elements()) worst = std::max(worst, dfs::hs_norm(dfs::commutant_projection(l, comm)));
    for (int t = 0; t < 100; ++t) {
      const Matrix x = dfs::random_operator(model.dim, rng);
      const Matrix px = dfs::commutant_projection(x, comm);
      worst = std::max(worst, dfs::hs_norm(dfs::commutant_projection(px, comm) - px));
      for (const auto& g : model.generators) worst = std::max(worst, dfs::hs_norm(px * g - g * px));
      worst = std::max(worst, dfs::hs_norm(px - span_projection(x, q_perm)));
    }
  }
  out.require(worst <= 1e-10, "residual");
  out.detail << " worst residual " << sci(worst);
}

void symmetrizer_routes(Outcome& out) {
  auto rng = dfs::make_rng(4004);
  double worst = 0.0;
  {
    const auto model = dfs::collective_generators(2);
    const auto comm = dfs::commutant(dfs::OperatorBasis::from_span(4, model.generators));
    const auto n2 = dfs::build_n2_group();
    const auto basis = dfs::irrep_basis(model);
    const auto glued = dfs::build_glued_group(basis, dfs::summarize(basis));
    out.require(n2.order() == 27 && n2.closure_verified, "n2 group closed, order 27");
    for (int t = 0; t < 100; ++t) {
      const Matrix x = dfs::random_operator(4, rng);
      const Matrix a = dfs::commutant_projection(x, comm);
      const Matrix b = dfs::finite_group_average(x, n2);
      const Matrix c = dfs::finite_group_average(x, glued);
      worst = std::max({worst, dfs::hs_norm(a - b), dfs::hs_norm(a - c), dfs::hs_norm(b - c)});
    }
  }
  for (int n : {1, 3}) {
    const auto model = dfs::collective_generators(n);
    const auto comm = dfs::commutant(dfs::OperatorBasis::from_span(model.dim, model.generators));
    const auto basis = dfs::irrep_basis(model);
    const auto glued = dfs::build_glued_group(basis, dfs::summarize(basis));
    out.require(glued.closure_verified, "glued group closed N=" + std::to_string(n));
    for (int t = 0; t < 100; ++t) {
      const Matrix x = dfs::random_operator(model.dim, rng);
      worst = std::max(worst, dfs::hs_norm(dfs::commutant_projection(x, comm) - dfs::finite_group_average(x, glued)));
    }
  }
  out.require(worst <= 1e-8, "route agreement");
  out.detail << " worst route gap " << sci(worst);

  for (int n : {2, 3}) {
    const auto model = dfs::collective_generators(n);
    const Matrix q_perm = range_basis(vec_columns(permutation_operators(n)));
    const Matrix x = dfs::random_operator(model.dim, rng);
    const auto herm = dfs::hermitian_lie_basis(model.hermitian_generators());
    const auto mc = dfs::monte_carlo_twirl(x, herm, rng);
    const double z = dfs::hs_norm(mc.mean - span_projection(x, q_perm)) / mc.standard_error;
    out.require(z <= 3.0, "Monte Carlo N=" + std::to_string(n));
    out.detail << " MC N=" << n << " " << sci(z) << " SE";
  }
}

struct CodeFixture {
  CodeFixture()
      : model(dfs::collective_generators(4)),
        algebra(dfs::associative_closure(model.generators)),
        comm(dfs::commutant(dfs::OperatorBasis::from_span(16, model.generators))),
        code(dfs::find_code(model.generators)) {}

  Matrix random_in(const dfs::OperatorBasis& basis, dfs::Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m = Matrix::Zero(16, 16);
    for (const auto& b : basis.elements()) m += Complex(normal(rng), normal(rng)) * b;
    return m;
  }

  Matrix restrict(const Matrix& x) const { return code.isometry.adjoint() * x * code.isometry; }

  dfs::CollectiveModel model;
  dfs::OperatorBasis algebra;
  dfs::OperatorBasis comm;
  dfs::CodeSubspace code;
};

void restriction_structure(Outcome& out, const CodeFixture& f) {
  auto rng = dfs::make_rng(5005);
  double off_scalar = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Matrix r = f.restrict(f.random_in(f.algebra, rng));
    off_scalar = std::max(off_scalar, (r - r.trace() / 2.0 * eye(2)).norm());
  }
  std::vector<Matrix> restricted;
  for (int t = 0; t < 50; ++t) restricted.push_back(f.restrict(f.random_in(f.comm, rng)));
  Matrix gram(50, 50);
  for (int a = 0; a < 50; ++a) {
    for (int b = 0; b < 50; ++b) gram(a, b) = (restricted[a].adjoint() * restricted[b]).trace();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const double top = es.eigenvalues().maxCoeff();
  long rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-10 * top ? 1 : 0;
  out.require(off_scalar <= 1e-10, "algebra restricts to scalars");
  out.require(rank == 4, "commutant restricts onto M(2)");
  out.detail << " off-scalar " << sci(off_scalar) << ", Gram rank " << rank;
}

void universality(Outcome& out, const CodeFixture& f) {
  int agreed = 0;
  for (std::uint64_t seed = 6000; seed < 6020; ++seed) {
    auto rng = dfs::make_rng(seed);
    const Matrix h1 = dfs::random_hermitian(16, rng);
    const Matrix h2 = dfs::random_hermitian(16, rng);
    const std::vector<Matrix> pair{h1, h2};
    const auto report = dfs::is_universal_on_code(pair, f.code, f.comm);
    const std::vector<Matrix> logical{kI * f.restrict(dfs::commutant_projection(h1, f.comm)),
                                      kI * f.restrict(dfs::commutant_projection(h2, f.comm))};
    const std::size_t oracle_dim = real_lie_dim(logical);
    const bool ok = report.verdict && report.closure_dim == 4 && oracle_dim == 4;
    out.require(ok, "seed " + std::to_string(seed));
    agreed += ok ? 1 : 0;

    const std::vector<Matrix> single{h1};
    const std::vector<Matrix> duplicate{h1, h1};
    out.require(!dfs::is_universal_on_code(single, f.code, f.comm).verdict, "single control");
    out.require(!dfs::is_universal_on_code(duplicate, f.code, f.comm).verdict, "duplicate control");
    out.require(real_lie_dim({logical[0]}) < 4, "single control oracle");
  }
  out.detail << " " << agreed << "/20 seeds reach dim 4; controls false";
}

void synthesis(Outcome& out, const CodeFixture& f) {
  auto rng = dfs::make_rng(7007);
  const auto herm = f.model.hermitian_generators();
  double worst_gate = 0.0, worst_invariance = 0.0, worst_gauge = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Matrix target = dfs::random_unitary(2, rng);
    const Matrix h = dfs::synthesize_invariant_hamiltonian(dfs::LogicalOperator{target}, f.code, f.algebra);
    out.require(dfs::is_hermitian(h, 1e-12), "Hermitian");
    worst_invariance = std::max(worst_invariance, dfs::hs_norm(dfs::commutant_projection(h, f.comm) - h));
    const Matrix logical = f.restrict(h);
    const EigenPropagator prop(logical);
    worst_gate = std::max(worst_gate, (prop.unitary(-1.0) - target).cwiseAbs().maxCoeff());
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix shift = Matrix::Zero(16, 16);
    for (const auto& g : herm) shift += normal(rng) * g;
    for (const auto& g : herm) shift += normal(rng) * (g * shift - shift * g) * kI;
    const Matrix a = dfs::commutant_projection(h, f.comm);
    const Matrix b = dfs::commutant_projection(h + hermitian_part(shift), f.comm);
    worst_gauge = std::max(worst_gauge, dfs::hs_norm(a - b));
  }
  out.require(worst_invariance <= 1e-10, "pi(H) = H");
  out.require(worst_gate <= 1e-9, "exp(i H|C) = target");
  out.require(worst_gauge <= 1e-10, "gauge invariance");
  out.detail << " gate " << sci(worst_gate) << ", pi(H)-H " << sci(worst_invariance) << ", gauge "
             << sci(worst_gauge);
}

void noiseless_evolution(Outcome& out) {
  auto rng = dfs::make_rng(8008);
  constexpr std::size_t env = 2;
  double worst_leak = 0.0, worst_purity = 0.0, worst_control = 1.0;
  for (int n : {2, 4}) {
    const auto model = dfs::collective_generators(n);
    const auto algebra = dfs::associative_closure(model.generators);
    const auto code = dfs::find_code(model.generators);
    const auto sys = static_cast<Eigen::Index>(model.dim);
    for (int t = 0; t < 10; ++t) {
      const auto noise = dfs::random_collective_noise_model(model, algebra, env, 1.0, rng);
      const EigenPropagator prop(dfs::build_joint_hamiltonian(noise));
      const Vector psi = code.isometry * dfs::random_state(code.code_dim, rng);
      const Vector chi = dfs::random_state(env, rng);
      const Vector start = kron_vec(psi, chi);
      Vector triplet = Vector::Zero(sys);
      triplet(0) = 1.0;
      const Vector control = kron_vec(triplet, chi);
      double control_min = 1.0;
      for (int k = 0; k < 100; ++k) {
        const double time = 10.0 * k / 99.0;
        const auto m = joint_metrics(prop.apply(start, time), code.isometry, sys, env);
        worst_leak = std::max(worst_leak, m.leakage);
        worst_purity = std::max(worst_purity, 1.0 - m.purity);
        control_min = std::min(control_min, joint_metrics(prop.apply(control, time), code.isometry, sys, env).purity);
      }
      if (n == 2) {
        out.require(control_min < 0.999, "triplet control decoheres");
        worst_control = std::min(worst_control, 1.0 - control_min);
      }
    }
  }
  out.require(worst_leak <= 1e-9, "leakage");
  out.require(worst_purity <= 1e-9, "purity");
  out.detail << " leakage " << sci(worst_leak) << ", 1-purity " << sci(worst_purity)
             << ", weakest triplet purity loss " << sci(worst_control);
}

void ancilla(Outcome& out) {
  auto rng = dfs::make_rng(9009);
  double worst_p = 0.0, worst_f = 0.0;
  for (int n : {2, 3}) {
    const auto model = dfs::collective_generators(n);
    const auto code = dfs::find_code(model.generators);
    const double expected = n == 2 ? 0.5 : 1.0 / 6.0;
    const auto perms = permutation_operators(n);
    for (int t = 0; t < 10; ++t) {
      const auto program = dfs::AncillaProgram::random_unitary(n, rng);
      Matrix x = Matrix::Zero(static_cast<Eigen::Index>(model.dim), static_cast<Eigen::Index>(model.dim));
      for (std::size_t k = 0; k < perms.size(); ++k) x += program.coefficients[k] * perms[k];
      out.require((x.adjoint() * x - eye(x.rows())).cwiseAbs().maxCoeff() <= 1e-10, "X unitary");
      const Vector psi = code.empty() ? dfs::random_state(model.dim, rng)
                                      : Vector(code.isometry * dfs::random_state(code.code_dim, rng));
      const auto result = dfs::ancilla_scheme(program, psi, &code);
      worst_p = std::max(worst_p, std::abs(result.success_probability - expected));
      worst_f = std::max(worst_f, std::abs(1.0 - std::abs((x * psi).dot(result.conditional_state))));
    }
  }
  out.require(worst_p <= 1e-12, "success probability 1/N!");
  out.require(worst_f <= 1e-10, "conditional fidelity");
  out.detail << " probability error " << sci(worst_p) << ", fidelity error " << sci(worst_f);
}

void pulse_convergence(Outcome& out) {
  auto rng = dfs::make_rng(10010);
  const auto model = dfs::collective_generators(2);
  const auto comm = dfs::commutant(dfs::OperatorBasis::from_span(4, model.generators));
  const Matrix q_perm = range_basis(vec_columns(permutation_operators(2)));
  const auto group = dfs::build_n2_group();
  const Matrix h = dfs::random_hermitian_unit_norm(4, rng);
  const Matrix pi_h = hermitian_part(span_projection(h, q_perm));
  out.require(dfs::hs_norm(h - pi_h) > 0.1, "gate is not invariant");
  const Vector psi = dfs::random_state(4, rng);
  const double total = 1.0;
  const Vector reference = EigenPropagator(pi_h).apply(psi, total);
  const std::vector<std::size_t> ladder{4000, 8000, 16000, 32000, 64000};
  std::vector<double> log_tau, log_err;
  double finest = 0.0;
  for (std::size_t cycles : ladder) {
    const double tau_p = total / (static_cast<double>(group.order()) * static_cast<double>(cycles));
    const auto schedule = dfs::make_pulse_schedule(group, tau_p, cycles);
    finest = (dfs::pulse_sequence_evolution(h, schedule, psi).states.back() - reference).norm();
    log_tau.push_back(std::log(tau_p));
    log_err.push_back(std::log(finest));
  }
  const double k = static_cast<double>(ladder.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    sx += log_tau[i];
    sy += log_err[i];
    sxx += log_tau[i] * log_tau[i];
    sxy += log_tau[i] * log_err[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  out.require(slope >= 0.8 && slope <= 1.2, "slope in [0.8, 1.2]");
  out.require(finest <= 1e-6, "finest error");

  const auto code = dfs::find_code(model.generators);
  const auto algebra = dfs::associative_closure(model.generators);
  constexpr std::size_t env = 2;
  const auto noise = dfs::random_collective_noise_model(model, algebra, env, 1.0, rng);
  const Vector start = kron_vec(code.isometry.col(0), dfs::random_state(env, rng));
  const std::size_t cycles = ladder.back();
  const auto schedule =
      dfs::make_pulse_schedule(group, total / (static_cast<double>(group.order()) * cycles), cycles);
  const auto pulsed = dfs::pulse_sequence_evolution(h, schedule, start, noise);
  const EigenPropagator free(dfs::build_joint_hamiltonian(noise) + dfs::kron(h, eye(env)));
  double excess = -1.0;
  for (std::size_t i = 0; i < pulsed.times.size(); ++i) {
    const double lp = joint_metrics(pulsed.states[i], code.isometry, 4, env).leakage;
    const double lu = joint_metrics(free.apply(start, pulsed.times[i]), code.isometry, 4, env).leakage;
    excess = std::max(excess, lp - lu);
  }
  out.require(excess <= 1e-12, "pulsed leakage <= unpulsed");
  out.detail << " slope " << sci(slope) << ", finest error " << sci(finest) << ", max leakage excess "
             << sci(excess);
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&failures](int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    try {
      body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d (%s):%s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.str().c_str());
    std::fflush(stdout);
  };

  report(1, "code dimensions", code_dimensions);
  report(2, "dimension identities", dimension_identities);
  report(3, "symmetrizer properties", symmetrizer_properties);
  report(4, "symmetrizer routes", symmetrizer_routes);
  const CodeFixture fixture;
  report(5, "restriction to the code", [&](Outcome& o) { restriction_structure(o, fixture); });
  report(6, "universality", [&](Outcome& o) { universality(o, fixture); });
  report(7, "synthesis round trip", [&](Outcome& o) { synthesis(o, fixture); });
  report(8, "noiseless evolution", noiseless_evolution);
  report(9, "ancilla scheme", ancilla);
  report(10, "pulse convergence", pulse_convergence);

  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
