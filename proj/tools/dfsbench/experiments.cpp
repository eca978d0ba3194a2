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

#include "dfsbench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "dfs/code_symmetry.hpp"
#include "dfs/dynamics.hpp"
#include "dfs/gatework.hpp"
#include "dfs/operator_core.hpp"
#include "dfs/random.hpp"
#include "dfs/rep_models.hpp"
#include "dfs/serialization.hpp"

namespace dfsbench {

namespace {

using dfs::Complex;
using dfs::Matrix;
using dfs::Vector;
using nlohmann::json;

constexpr std::size_t kGroupArtifactMaxOrder = 1024;
// Rows written to the pulse-sim trajectory table; every cycle is still compared.
constexpr std::size_t kTrajectoryRows = 1000;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  template <typename... Ts>
  void add(const Ts&... values) {
    std::vector<std::string> cells{cell(values)...};
    row(cells);
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << (i ? "," : "") << cells[i];
    }
    out_ << "\n";
  }

  std::size_t columns_;
  std::ostringstream out_;
};

class Checks {
 public:
  explicit Checks(std::vector<Check>& out) : out_(out) {}

  void le(const std::string& name, double value, double threshold) {
    out_.push_back({name, value, threshold, "<=", 0.0, value <= threshold});
  }
  void ge(const std::string& name, double value, double threshold) {
    out_.push_back({name, value, threshold, ">=", 0.0, value >= threshold});
  }
  void eq(const std::string& name, double value, double expected) {
    out_.push_back({name, value, expected, "==", 0.0, value == expected});
  }
  void in(const std::string& name, double value, double lo, double hi) {
    out_.push_back({name, value, lo, "in", hi, value >= lo && value <= hi});
  }

 private:
  std::vector<Check>& out_;
};

dfs::Rng rng_for(const ExperimentConfig& cfg, std::uint64_t stream = 0) {
  return dfs::make_rng(*cfg.seed + stream);
}

Matrix identity(std::size_t d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

Vector kron_state(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : dfs::max_abs_entry(a); }

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

dfs::OperatorBasis generator_commutant(const dfs::CollectiveModel& model, double tol) {
  const auto gens = dfs::OperatorBasis::from_span(model.dim, model.generators, tol);
  return dfs::commutant(gens, tol);
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

/// Swap of sites 0 and 1.
Matrix swap01(int n_sites) {
  std::vector<int> sigma(static_cast<std::size_t>(n_sites));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma[0], sigma[1]);
  return dfs::permutation_operator(sigma, n_sites);
}

// -- decompose ---------------------------------------------------------------

void run_decompose(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto formula = dfs::collective_decomposition(n);
  const auto basis = dfs::irrep_basis(model, 1e-9);
  const auto numeric = dfs::summarize(basis);

  checks.eq("sum_n_times_d", static_cast<double>(formula.sum_n_times_d()), static_cast<double>(model.dim));
  int mismatches = 0;
  Csv table({"twice_j", "j", "irrep_dim", "multiplicity_formula", "multiplicity_numeric", "casimir"});
  for (std::size_t k = 0; k < formula.labels.size(); ++k) {
    const dfs::Spin j = formula.labels[k];
    const std::uint64_t numeric_n = numeric.multiplicity_of(j);
    if (numeric_n != formula.multiplicities[k]) ++mismatches;
    table.add(j.twice, j.value(), j.irrep_dim(), formula.multiplicities[k], numeric_n, j.casimir_eigenvalue());
  }
  checks.eq("census_mismatches", mismatches, 0);

  const Matrix& u = basis.change_of_basis;
  checks.le("irrep_basis_unitarity", max_abs(u.adjoint() * u - identity(model.dim)), 1e-9);
  Matrix expected = Matrix::Zero(u.cols(), u.cols());
  for (std::size_t i = 0; i < basis.labels.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    expected(ii, ii) = basis.labels[i].j.casimir_eigenvalue();
  }
  checks.le("casimir_diagonal", max_abs(u.adjoint() * dfs::casimir(model) * u - expected), 1e-8);

  json results{{"n_sites", n},
               {"dim", model.dim},
               {"sum_n_times_d", formula.sum_n_times_d()},
               {"sum_n_squared", formula.sum_n_squared()},
               {"sum_d_squared", formula.sum_d_squared()},
               {"symmetric_operator_dim", dfs::symmetric_operator_dim(n)}};

  if (n <= 5) {
    const auto algebra = dfs::associative_closure(model.generators, cfg.tol);
    checks.eq("associative_closure_dim", static_cast<double>(algebra.size()),
              static_cast<double>(dfs::symmetric_operator_dim(n)));
    const auto comm = generator_commutant(model, cfg.tol);
    checks.eq("commutant_dim", static_cast<double>(comm.size()), static_cast<double>(formula.sum_n_squared()));
    std::vector<Matrix> perms;
    for (const auto& sigma : dfs::all_permutations(n)) perms.push_back(dfs::permutation_operator(sigma, n));
    const auto perm_span = dfs::OperatorBasis::from_span(model.dim, perms, cfg.tol);
    const double distance = (comm.span_projector() - perm_span.span_projector()).norm();
    checks.le("commutant_vs_permutation_span", distance, 1e-8);
    results["associative_closure_dim"] = algebra.size();
    results["commutant_dim"] = comm.size();
    results["permutation_span_dim"] = perm_span.size();
  }
  rep.results = std::move(results);
  rep.artifacts.push_back({"decomposition.csv", table.str()});
  rep.artifacts.push_back({"model.json", dump_json(dfs::to_json(model))});
}

// -- find-code ---------------------------------------------------------------

void run_find_code(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n, cfg.local_dim);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const Matrix& v = code.isometry;

  if (!code.empty()) {
    checks.le("isometry", max_abs(v.adjoint() * v - identity(code.code_dim)), 1e-10);
    double annihilation = 0.0;
    for (const auto& g : model.generators) annihilation = std::max(annihilation, max_abs(g * v));
    checks.le("generator_annihilation", annihilation, 1e-9);
  }
  json results{{"n_sites", n}, {"local_dim", cfg.local_dim}, {"dim", model.dim}, {"code_dim", code.code_dim}};
  if (model.is_qubit()) {
    const std::uint64_t formula = n % 2 == 0 ? dfs::multiplicity(n, dfs::Spin{0}) : 0;
    checks.eq("code_dim_vs_formula", static_cast<double>(code.code_dim), static_cast<double>(formula));
    Eigen::SelfAdjointEigenSolver<Matrix> es(dfs::casimir(model));
    const auto singlets = (es.eigenvalues().array().abs() < 1e-8).count();
    checks.eq("code_dim_vs_casimir_kernel", static_cast<double>(code.code_dim), static_cast<double>(singlets));
    results["multiplicity_formula"] = formula;
  }
  rep.results = std::move(results);
  rep.artifacts.push_back({"model.json", dump_json(dfs::to_json(model))});
  rep.artifacts.push_back({"code.json", dump_json(dfs::to_json(code))});
}

// -- symmetrize --------------------------------------------------------------

void run_symmetrize(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto lie = dfs::lie_closure(model.generators, cfg.tol);
  const auto comm = generator_commutant(model, cfg.tol);
  auto rng = rng_for(cfg);
  const auto pi = [&comm](const Matrix& x) { return dfs::commutant_projection(x, comm); };

  std::optional<dfs::SymmetrizingGroup> n2_group;
  std::optional<dfs::SymmetrizingGroup> glued;
  if (n == 2) n2_group = dfs::build_n2_group();
  if (n <= 3) {
    const auto basis = dfs::irrep_basis(model, 1e-9);
    glued = dfs::build_glued_group(basis, dfs::summarize(basis));
  }

  double kernel = 0.0;
  for (const auto& l : lie.elements()) kernel = std::max(kernel, dfs::hs_norm(pi(l)));
  checks.le("kernel_contains_lie_algebra", kernel, 1e-10);

  Csv table({"trial", "idempotence", "commutation", "self_adjointness", "n2_route", "glued_route", "n2_vs_glued"});
  double idem_max = 0.0, comm_max = 0.0, adj_max = 0.0, n2_max = 0.0, glued_max = 0.0, n2_glued_max = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int t = 0; t < cfg.trials; ++t) {
    const Matrix x = dfs::random_operator(model.dim, rng);
    const Matrix y = dfs::random_operator(model.dim, rng);
    const Matrix px = pi(x);
    const double idem = dfs::hs_norm(pi(px) - px);
    double commutation = 0.0;
    for (const auto& g : model.generators) commutation = std::max(commutation, dfs::hs_norm(dfs::commutator(px, g)));
    const double adj = std::abs(dfs::hs_inner(y, px) - dfs::hs_inner(pi(y), x));
    double n2_route = nan, glued_route = nan, n2_vs_glued = nan;
    Matrix n2_avg, glued_avg;
    if (n2_group) {
      n2_avg = dfs::finite_group_average(x, *n2_group);
      n2_route = dfs::hs_norm(n2_avg - px);
      n2_max = std::max(n2_max, n2_route);
    }
    if (glued) {
      glued_avg = dfs::finite_group_average(x, *glued);
      glued_route = dfs::hs_norm(glued_avg - px);
      glued_max = std::max(glued_max, glued_route);
    }
    if (n2_group && glued) {
      n2_vs_glued = dfs::hs_norm(n2_avg - glued_avg);
      n2_glued_max = std::max(n2_glued_max, n2_vs_glued);
    }
    idem_max = std::max(idem_max, idem);
    comm_max = std::max(comm_max, commutation);
    adj_max = std::max(adj_max, adj);
    table.add(t, idem, commutation, adj, n2_route, glued_route, n2_vs_glued);
  }
  checks.le("idempotence", idem_max, 1e-10);
  checks.le("image_commutes_with_generators", comm_max, 1e-10);
  checks.le("self_adjointness", adj_max, 1e-10);
  if (n2_group) {
    checks.eq("n2_group_order", static_cast<double>(n2_group->order()), 27);
    checks.eq("n2_group_closed", n2_group->closure_verified ? 1 : 0, 1);
    checks.le("n2_route_vs_commutant", n2_max, 1e-8);
  }
  if (glued) {
    checks.le("glued_route_vs_commutant", glued_max, 1e-8);
    if (n2_group) checks.le("n2_route_vs_glued_route", n2_glued_max, 1e-8);
  }

  json results{{"n_sites", n},
               {"lie_dim", lie.size()},
               {"commutant_dim", comm.size()},
               {"kernel_dim", dfs::gauge_kernel_dim(comm)}};
  if (n == 2) {
    const auto literal = dfs::n2_products(dfs::kN2LiteralAngle);
    const auto shifted = dfs::n2_products(dfs::kN2ShiftAngle);
    results["n2_literal_angle_shift_deviation_from_identity"] =
        max_abs(dfs::n2_shift(dfs::kN2LiteralAngle) - identity(model.dim));
    results["n2_products_closure_defect_literal"] = dfs::closure_defect(literal);
    results["n2_products_closure_defect_shift"] = dfs::closure_defect(shifted);
  }
  if (glued) {
    results["glued_group_order"] = glued->order();
    results["glued_group_closure_defect"] =
        std::isnan(glued->closure_defect) ? json(nullptr) : json(glued->closure_defect);
  }

  if (cfg.mc_samples > 0) {
    const Matrix x = dfs::random_operator(model.dim, rng);
    const auto herm = dfs::hermitian_lie_basis(model.hermitian_generators(), cfg.tol);
    dfs::MonteCarloOptions options;
    options.samples = cfg.mc_samples;
    const auto mc = dfs::monte_carlo_twirl(x, herm, rng, options);
    const double deviation = dfs::hs_norm(mc.mean - pi(x));
    checks.le("monte_carlo_standard_errors", deviation / mc.standard_error, 3.0);
    results["monte_carlo"] = {{"samples", mc.samples},
                              {"deviation", deviation},
                              {"standard_error", mc.standard_error},
                              {"walk_length", options.walk_length},
                              {"coefficient_scale", options.coefficient_scale}};
  }
  rep.results = std::move(results);
  rep.artifacts.push_back({"symmetrize.csv", table.str()});
  const dfs::SymmetrizingGroup* group = n2_group ? &*n2_group : glued ? &*glued : nullptr;
  if (group != nullptr && group->order() <= kGroupArtifactMaxOrder) {
    rep.artifacts.push_back({"group.json", dump_json(dfs::to_json(*group))});
  }
}

// -- certify-universality ----------------------------------------------------

void run_certify(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto comm = generator_commutant(model, cfg.tol);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const double tol = std::max(cfg.tol, 1e-9);

  Csv table({"trial", "seed", "closure_dim", "required_dim", "verdict"});
  json reports = json::array();
  int failures = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = *cfg.seed + static_cast<std::uint64_t>(t);
    auto rng = dfs::make_rng(seed);
    const std::vector<Matrix> hams{dfs::random_hermitian(model.dim, rng), dfs::random_hermitian(model.dim, rng)};
    const auto r = dfs::is_universal_on_code(hams, code, comm, tol);
    if (!r.verdict || r.closure_dim != r.required_dim) ++failures;
    table.add(t, seed, r.closure_dim, r.required_dim, r.verdict);
    reports.push_back(dfs::to_json(r));
  }
  checks.eq("failed_trials", failures, 0);

  json controls = json::object();
  if (code.code_dim >= 2) {
    auto rng = rng_for(cfg);
    const Matrix h = dfs::random_hermitian(model.dim, rng);
    const std::vector<Matrix> single{h};
    const std::vector<Matrix> duplicate{h, h};
    const auto r1 = dfs::is_universal_on_code(single, code, comm, tol);
    const auto r2 = dfs::is_universal_on_code(duplicate, code, comm, tol);
    checks.eq("single_generator_control_verdict", r1.verdict ? 1 : 0, 0);
    checks.eq("duplicate_generator_control_verdict", r2.verdict ? 1 : 0, 0);
    controls = {{"single", dfs::to_json(r1)}, {"duplicate", dfs::to_json(r2)}};
  }
  rep.results = {{"n_sites", n}, {"code_dim", code.code_dim}, {"required_dim", code.code_dim * code.code_dim}};
  rep.artifacts.push_back({"universality.csv", table.str()});
  rep.artifacts.push_back({"universality.json", dump_json({{"trials", reports}, {"controls", controls}})});
}

// -- synthesize --------------------------------------------------------------

void run_synthesize(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto algebra = dfs::associative_closure(model.generators, cfg.tol);
  const auto comm = generator_commutant(model, cfg.tol);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const auto lie_herm = dfs::hermitian_lie_basis(model.hermitian_generators(), cfg.tol);
  const auto pi = [&comm](const Matrix& x) { return dfs::commutant_projection(x, comm); };
  const double synth_tol = std::max(cfg.tol, 1e-9);
  auto rng = rng_for(cfg);
  std::normal_distribution<double> normal(0.0, 1.0);

  Csv table({"trial", "hermiticity", "invariance", "round_trip", "gauge"});
  double herm_max = 0.0, inv_max = 0.0, rt_max = 0.0, gauge_max = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const Matrix target = dfs::random_unitary(code.code_dim, rng);
    const Matrix h = dfs::synthesize_invariant_hamiltonian(dfs::LogicalOperator{target}, code, algebra, synth_tol);
    const double herm = max_abs(h - h.adjoint());
    const Matrix pih = pi(h);
    const double inv = dfs::hs_norm(pih - h);
    const Matrix logical = dfs::restrict_to_code(h, code).entries;
    const double rt = max_abs(dfs::matrix_exp(Complex(0.0, 1.0) * logical) - target);
    Matrix g = Matrix::Zero(h.rows(), h.cols());
    for (const auto& b : lie_herm) g += normal(rng) * b;
    const double gauge = dfs::hs_norm(pi(h + g) - pih);
    herm_max = std::max(herm_max, herm);
    inv_max = std::max(inv_max, inv);
    rt_max = std::max(rt_max, rt);
    gauge_max = std::max(gauge_max, gauge);
    table.add(t, herm, inv, rt, gauge);
  }
  checks.le("hermiticity", herm_max, 1e-12);
  checks.le("invariance", inv_max, 1e-10);
  checks.le("round_trip", rt_max, 1e-9);
  checks.le("gauge_invariance", gauge_max, 1e-10);
  rep.results = {{"n_sites", n},
                 {"code_dim", code.code_dim},
                 {"algebra_dim", algebra.size()},
                 {"gauge_kernel_dim", dfs::gauge_kernel_dim(comm)}};
  rep.artifacts.push_back({"synthesis.csv", table.str()});
}

// -- simulate ----------------------------------------------------------------

std::vector<double> sample_times(std::size_t count, double t_max) {
  std::vector<double> times;
  if (count == 1) return {t_max};
  for (std::size_t k = 0; k < count; ++k) {
    times.push_back(t_max * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return times;
}

double purity_of(const Vector& joint, std::size_t system_dim, std::size_t env_dim) {
  const Matrix rho = dfs::reduced_system_state(joint, system_dim, env_dim);
  return (rho * rho).trace().real();
}

void run_simulate(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto algebra = dfs::associative_closure(model.generators, cfg.tol);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const std::size_t env = cfg.env_dim;
  dfs::check_dim_cap(model.dim * env, dfs::kJointDimCap);
  const Matrix swap = dfs::kron(swap01(n), identity(env));
  const auto times = sample_times(cfg.time_samples, cfg.t_max);
  auto rng = rng_for(cfg);

  Vector product = Vector::Zero(static_cast<Eigen::Index>(model.dim));
  product(0) = 1.0;

  Csv table({"trial", "time", "leakage", "purity", "fidelity", "swap_expectation", "energy", "control_purity"});
  double leak_max = 0.0, purity_min = 1.0, fid_min = 1.0, swap_drift = 0.0, energy_drift = 0.0;
  int undecohered_controls = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto noise = dfs::random_collective_noise_model(model, algebra, env, cfg.coupling_strength, rng, true);
    noise.validate(&algebra);
    const Matrix h = dfs::build_joint_hamiltonian(noise);
    const dfs::Propagator prop(h);
    const Vector psi = code.isometry * dfs::random_state(code.code_dim, rng);
    const Vector env_state = dfs::random_state(env, rng);
    const Vector start = kron_state(psi, env_state);
    const Vector control = kron_state(product, env_state);
    double swap0 = 0.0, energy0 = 0.0, control_min = 1.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Vector state = prop.apply(start, times[k]);
      const auto m = dfs::code_metrics(state, code, env, psi);
      const double sw = state.dot(swap * state).real();
      const double energy = state.dot(h * state).real();
      const double cp = purity_of(prop.apply(control, times[k]), model.dim, env);
      if (k == 0) {
        swap0 = sw;
        energy0 = energy;
      }
      leak_max = std::max(leak_max, m.leakage);
      purity_min = std::min(purity_min, m.purity);
      fid_min = std::min(fid_min, *m.fidelity);
      swap_drift = std::max(swap_drift, std::abs(sw - swap0));
      energy_drift = std::max(energy_drift, std::abs(energy - energy0));
      control_min = std::min(control_min, cp);
      table.add(t, times[k], m.leakage, m.purity, *m.fidelity, sw, energy, cp);
    }
    if (!(control_min < 0.999)) ++undecohered_controls;
  }
  checks.le("max_leakage", leak_max, 1e-9);
  checks.ge("min_purity", purity_min, 1.0 - 1e-9);
  checks.ge("min_fidelity", fid_min, 1.0 - 1e-9);
  checks.le("swap_expectation_drift", swap_drift, 1e-9);
  checks.le("energy_drift", energy_drift, 1e-10);
  checks.eq("controls_without_decoherence", undecohered_controls, 0);
  rep.results = {{"n_sites", n}, {"env_dim", env}, {"code_dim", code.code_dim}, {"samples_per_trial", times.size()}};
  rep.artifacts.push_back({"trajectory.csv", table.str()});
}

// -- pulse-sim ---------------------------------------------------------------

void run_pulse(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto comm = generator_commutant(model, cfg.tol);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const auto ordering =
      cfg.ordering == "palindromic" ? dfs::CycleOrdering::kPalindromic : dfs::CycleOrdering::kListOrder;
  dfs::SymmetrizingGroup group;
  if (n == 2) {
    group = dfs::build_n2_group();
  } else {
    const auto basis = dfs::irrep_basis(model, 1e-9);
    group = dfs::build_glued_group(basis, dfs::summarize(basis));
  }
  const std::size_t visits = group.order() * (ordering == dfs::CycleOrdering::kPalindromic ? 2 : 1);
  for (std::size_t cycles : cfg.cycle_ladder) {
    const double tau_p = cfg.total_time / static_cast<double>(cycles * visits);
    if (!(cfg.tau_op < tau_p)) {
      throw ConfigError("tau_op must be smaller than tau_p = " + fmt(tau_p) + " (cycles = " +
                        std::to_string(cycles) + ")");
    }
  }

  auto rng = rng_for(cfg);
  const Matrix h_gate = dfs::random_hermitian_unit_norm(model.dim, rng);
  const Matrix h_sym = hermitize(dfs::commutant_projection(h_gate, comm));
  const Vector initial = dfs::random_state(model.dim, rng);
  const Vector reference = dfs::evolve(initial, h_sym, cfg.total_time);

  Csv convergence({"cycles", "tau_p", "error", "ratio"});
  std::vector<double> log_tau, log_err, ratios;
  double previous = 0.0, finest = 0.0;
  for (std::size_t cycles : cfg.cycle_ladder) {
    const double tau_p = cfg.total_time / static_cast<double>(cycles * visits);
    const auto schedule = dfs::make_pulse_schedule(group, tau_p, cycles, cfg.tau_op, ordering);
    const auto traj = dfs::pulse_sequence_evolution(h_gate, schedule, initial);
    const double err = (traj.states.back() - reference).norm();
    const double ratio = previous > 0.0 ? previous / err : std::numeric_limits<double>::quiet_NaN();
    if (previous > 0.0) ratios.push_back(ratio);
    convergence.add(cycles, tau_p, err, ratio);
    log_tau.push_back(std::log(tau_p));
    log_err.push_back(std::log(err));
    previous = finest = err;
  }
  const double mx = std::accumulate(log_tau.begin(), log_tau.end(), 0.0) / static_cast<double>(log_tau.size());
  const double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / static_cast<double>(log_err.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < log_tau.size(); ++i) {
    sxy += (log_tau[i] - mx) * (log_err[i] - my);
    sxx += (log_tau[i] - mx) * (log_tau[i] - mx);
  }
  const double slope = sxy / sxx;
  // Palindromic cycles cancel the first-order term, leaving errors at the
  // rounding floor where no order can be measured.
  if (ordering == dfs::CycleOrdering::kListOrder) {
    checks.in("convergence_slope", slope, 0.8, 1.2);
    checks.ge("min_halving_ratio", *std::min_element(ratios.begin(), ratios.end()), 1.6);
    checks.le("max_halving_ratio", *std::max_element(ratios.begin(), ratios.end()), 2.4);
  }
  checks.le("finest_error", finest, 1e-6);
  json results{{"n_sites", n},
               {"group_order", group.order()},
               {"visits_per_cycle", visits},
               {"gate_noninvariant_part", dfs::hs_norm(h_gate - h_sym)},
               {"convergence_slope", slope},
               {"finest_error", finest}};
  rep.artifacts.push_back({"convergence.csv", convergence.str()});

  if (cfg.with_noise && !code.empty()) {
    const auto algebra = dfs::associative_closure(model.generators, cfg.tol);
    const std::size_t env = cfg.env_dim;
    dfs::check_dim_cap(model.dim * env, dfs::kJointDimCap);
    const auto noise = dfs::random_collective_noise_model(model, algebra, env, cfg.coupling_strength, rng, true);
    const Vector psi = code.isometry * dfs::random_state(code.code_dim, rng);
    const Vector start = kron_state(psi, dfs::random_state(env, rng));
    const std::size_t cycles = cfg.cycle_ladder.back();
    const double tau_p = cfg.total_time / static_cast<double>(cycles * visits);
    const auto schedule = dfs::make_pulse_schedule(group, tau_p, cycles, cfg.tau_op, ordering);
    const auto pulsed = dfs::pulse_sequence_evolution(h_gate, schedule, start, noise);
    const dfs::Propagator free(dfs::build_joint_hamiltonian(noise) + dfs::kron(h_gate, identity(env)));

    Csv table({"time", "pulsed_leakage", "unpulsed_leakage", "pulsed_purity", "unpulsed_purity"});
    double excess = -std::numeric_limits<double>::infinity();
    double pulsed_final = 0.0, unpulsed_final = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, (cycles + kTrajectoryRows - 1) / kTrajectoryRows);
    for (std::size_t k = 0; k < pulsed.times.size(); ++k) {
      const auto mp = dfs::code_metrics(pulsed.states[k], code, env);
      const auto mu = dfs::code_metrics(free.apply(start, pulsed.times[k]), code, env);
      if (k > 0) excess = std::max(excess, mp.leakage - mu.leakage);
      pulsed_final = mp.leakage;
      unpulsed_final = mu.leakage;
      if (k % stride == 0 || k + 1 == pulsed.times.size()) {
        table.add(pulsed.times[k], mp.leakage, mu.leakage, mp.purity, mu.purity);
      }
    }
    checks.le("pulsed_minus_unpulsed_leakage", excess, 1e-12);
    results["noise"] = {{"env_dim", env},
                        {"cycles", cycles},
                        {"pulsed_final_leakage", pulsed_final},
                        {"unpulsed_final_leakage", unpulsed_final}};
    rep.artifacts.push_back({"trajectory.csv", table.str()});
  } else if (cfg.with_noise) {
    results["noise"] = "skipped: the code is empty for odd N";
  }
  rep.results = std::move(results);
}

// -- ancilla -----------------------------------------------------------------

void run_ancilla(const ExperimentConfig& cfg, RunReport& rep) {
  Checks checks(rep.checks);
  const int n = cfg.n_sites;
  const auto model = dfs::collective_generators(n);
  const auto code = dfs::find_code(model.generators, cfg.tol);
  const auto perms = dfs::all_permutations(n);
  const double expected_p = 1.0 / static_cast<double>(perms.size());
  auto rng = rng_for(cfg);
  const auto draw_psi = [&]() -> Vector {
    if (code.empty()) return dfs::random_state(model.dim, rng);
    return code.isometry * dfs::random_state(code.code_dim, rng);
  };

  Csv table({"trial", "success_probability", "expected_probability", "fidelity", "input_in_code"});
  double p_dev = 0.0, fid_dev = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto program = dfs::AncillaProgram::random_unitary(n, rng);
    program.validate();
    const Vector psi = draw_psi();
    const auto out = dfs::ancilla_scheme(program, psi, &code);
    const Vector target = program.target() * psi;
    const double fid = std::abs(target.dot(out.conditional_state));
    p_dev = std::max(p_dev, std::abs(out.success_probability - expected_p));
    fid_dev = std::max(fid_dev, std::abs(1.0 - fid));
    table.add(t, out.success_probability, expected_p, fid, out.input_in_code);
  }
  checks.le("success_probability_deviation", p_dev, 1e-12);
  checks.le("conditional_fidelity_deviation", fid_dev, 1e-10);

  std::vector<Complex> unit(perms.size(), Complex(0.0, 0.0));
  unit[0] = 1.0;
  const Vector psi = draw_psi();
  const auto id_out = dfs::ancilla_scheme(dfs::AncillaProgram::from_coefficients(n, unit), psi, &code);
  checks.le("identity_program_state", (id_out.conditional_state - psi).norm(), 1e-12);
  checks.le("identity_program_probability", std::abs(id_out.success_probability - expected_p), 1e-12);
  if (n == 2) {
    const auto swap_out =
        dfs::ancilla_scheme(dfs::AncillaProgram::from_coefficients(2, {0.0, 1.0}), code.isometry.col(0), &code);
    checks.le("swap_on_singlet_probability", std::abs(swap_out.success_probability - 0.5), 1e-12);
    checks.le("swap_on_singlet_state", (swap_out.conditional_state + code.isometry.col(0)).norm(), 1e-12);
  }
  rep.results = {{"n_sites", n},
                 {"group_order", perms.size()},
                 {"code_dim", code.code_dim},
                 {"input_in_code", !code.empty()}};
  rep.artifacts.push_back({"ancilla.csv", table.str()});
}

}  // namespace

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json RunReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    json entry{{"name", c.name},
               {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
               {"comparison", c.comparison},
               {"threshold", c.threshold},
               {"pass", c.pass}};
    if (c.comparison == "in") {
      entry["threshold"] = json::array({c.threshold, c.upper_bound});
    }
    checks_json.push_back(std::move(entry));
  }
  json files = json::array();
  for (const auto& a : artifacts) files.push_back(a.file);
  return {{"schema", kReportSchema},
          {"experiment", std::string(dfsbench::to_string(config.kind))},
          {"config", config.to_json()},
          {"checks", checks_json},
          {"results", results},
          {"artifacts", files},
          {"pass", pass()}};
}

RunReport run(const ExperimentConfig& config) {
  if (uses_randomness(config.kind) && !config.seed) {
    throw ConfigError("experiment requires a seed");
  }
  RunReport report;
  report.config = config;
  switch (config.kind) {
    case ExperimentKind::kDecompose: run_decompose(config, report); break;
    case ExperimentKind::kFindCode: run_find_code(config, report); break;
    case ExperimentKind::kSymmetrize: run_symmetrize(config, report); break;
    case ExperimentKind::kCertifyUniversality: run_certify(config, report); break;
    case ExperimentKind::kSynthesize: run_synthesize(config, report); break;
    case ExperimentKind::kSimulate: run_simulate(config, report); break;
    case ExperimentKind::kPulseSim: run_pulse(config, report); break;
    case ExperimentKind::kAncilla: run_ancilla(config, report); break;
  }
  return report;
}

void write_outputs(const RunReport& report) {
  const std::filesystem::path dir(report.config.out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& a : report.artifacts) {
    std::ofstream out(dir / a.file, std::ios::binary);
    out << a.contents;
    if (!out) throw std::runtime_error("cannot write " + (dir / a.file).string());
  }
  dfs::write_json_file(dir / "report.json", report.to_json());
}

}  // namespace dfsbench
