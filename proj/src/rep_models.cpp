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
#include "dfs/rep_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dfs {

namespace {

using Index = Eigen::Index;

std::size_t checked_power(int base, int exponent, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    out *= static_cast<std::size_t>(base);
    check_dim_cap(out, cap);
  }
  return out;
}

Matrix unit_matrix(int d, int row, int col) {
  Matrix m = Matrix::Zero(d, d);
  m(row, col) = 1.0;
  return m;
}

Matrix collective_sum(const Matrix& local, int n_sites) {
  Matrix total = embed_site_operator(local, 0, n_sites);
  for (int j = 1; j < n_sites; ++j) {
    total += embed_site_operator(local, j, n_sites);
  }
  return total;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::string to_string(Spin j) {
  if (j.twice % 2 == 0) {
    return std::to_string(j.twice / 2);
  }
  return std::to_string(j.twice) + "/2";
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0),
       Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

Matrix sigma_plus() { return unit_matrix(2, 0, 1); }

Matrix sigma_minus() { return unit_matrix(2, 1, 0); }

Matrix embed_site_operator(const Matrix& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) {
    throw InvalidArgument("embed_site_operator: site out of range");
  }
  const Index d = op.rows();
  Matrix out = Matrix::Identity(1, 1);
  for (int j = 0; j < n_sites; ++j) {
    out = kron(out, j == site ? op : Matrix(Matrix::Identity(d, d)));
  }
  return out;
}

const Matrix& CollectiveModel::sz() const {
  if (!is_qubit()) throw InvalidArgument("CollectiveModel::sz: qubit models only");
  return generators[0];
}

const Matrix& CollectiveModel::splus() const {
  if (!is_qubit()) throw InvalidArgument("CollectiveModel::splus: qubit models only");
  return generators[1];
}

const Matrix& CollectiveModel::sminus() const {
  if (!is_qubit()) throw InvalidArgument("CollectiveModel::sminus: qubit models only");
  return generators[2];
}

std::vector<Matrix> CollectiveModel::hermitian_generators() const {
  if (!is_qubit()) {
    throw InvalidArgument("CollectiveModel::hermitian_generators: qubit models only");
  }
  const Complex i(0.0, 1.0);
  return {splus() + sminus(), -i * (splus() - sminus()), sz()};
}

CollectiveModel collective_generators(int n_sites, int local_dim, std::size_t dim_cap) {
  if (n_sites < 1) {
    throw InvalidArgument("collective_generators: N must be >= 1");
  }
  if (local_dim < 2) {
    throw InvalidArgument("collective_generators: local dimension must be >= 2");
  }
  CollectiveModel model;
  model.n_sites = n_sites;
  model.local_dim = local_dim;
  model.dim = checked_power(local_dim, n_sites, dim_cap);
  if (local_dim == 2) {
    model.generators = {collective_sum(pauli_z(), n_sites), collective_sum(sigma_plus(), n_sites),
                        collective_sum(sigma_minus(), n_sites)};
    model.generator_names = {"S^z", "S^+", "S^-"};
    return model;
  }
  for (int k = 0; k + 1 < local_dim; ++k) {
    const Matrix h = unit_matrix(local_dim, k, k) - unit_matrix(local_dim, k + 1, k + 1);
    model.generators.push_back(collective_sum(h, n_sites));
    model.generator_names.push_back("H_" + std::to_string(k));
  }
  for (int a = 0; a < local_dim; ++a) {
    for (int b = 0; b < local_dim; ++b) {
      if (a != b) {
        model.generators.push_back(collective_sum(unit_matrix(local_dim, a, b), n_sites));
        model.generator_names.push_back("E_" + std::to_string(a) + std::to_string(b));
      }
    }
  }
  return model;
}

bool is_permutation(std::span<const int> sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) {
    return false;
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

std::vector<int> compose(std::span<const int> sigma, std::span<const int> tau) {
  if (sigma.size() != tau.size()) {
    throw InvalidArgument("compose: permutations of different size");
  }
  std::vector<int> out(sigma.size());
  for (std::size_t j = 0; j < tau.size(); ++j) {
    out[j] = sigma[static_cast<std::size_t>(tau[j])];
  }
  return out;
}

std::vector<int> inverse(std::span<const int> sigma) {
  std::vector<int> out(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    out[static_cast<std::size_t>(sigma[j])] = static_cast<int>(j);
  }
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Matrix permutation_operator(std::span<const int> sigma, int n_sites, int local_dim) {
  if (!is_permutation(sigma, n_sites)) {
    throw InvalidArgument("permutation_operator: not a permutation of " + std::to_string(n_sites) + " sites");
  }
  const std::size_t dim = checked_power(local_dim, n_sites, kDefaultDimCap);
  Matrix out = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  std::vector<int> in_digits(static_cast<std::size_t>(n_sites));
  std::vector<int> out_digits(static_cast<std::size_t>(n_sites));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx;
    for (int j = n_sites - 1; j >= 0; --j) {
      in_digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(local_dim));
      rest /= static_cast<std::size_t>(local_dim);
    }
    for (int j = 0; j < n_sites; ++j) {
      out_digits[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = in_digits[static_cast<std::size_t>(j)];
    }
    std::size_t target = 0;
    for (int j = 0; j < n_sites; ++j) {
      target = target * static_cast<std::size_t>(local_dim) + static_cast<std::size_t>(out_digits[static_cast<std::size_t>(j)]);
    }
    out(static_cast<Index>(target), static_cast<Index>(idx)) = 1.0;
  }
  return out;
}

std::vector<Spin> spin_ladder(int n_sites) {
  if (n_sites < 1) {
    throw InvalidArgument("spin_ladder: N must be >= 1");
  }
  std::vector<Spin> out;
  for (int twice = n_sites % 2; twice <= n_sites; twice += 2) {
    out.push_back(Spin::from_twice(twice));
  }
  return out;
}

std::uint64_t multiplicity(int n_sites, Spin j) {
  if (n_sites < 1 || n_sites > 60) {
    throw InvalidArgument("multiplicity: N out of supported range [1, 60]");
  }
  if (j.twice < 0 || j.twice > n_sites || (n_sites - j.twice) % 2 != 0) {
    throw InvalidArgument("multiplicity: J = " + to_string(j) + " is not on the ladder for N = " +
                          std::to_string(n_sites));
  }
  const int upper = (n_sites + j.twice) / 2;  // N/2 + J
  const int lower = (n_sites - j.twice) / 2;  // N/2 - J
  // N! / [(N/2+J+1)! (N/2-J)!] = C(N, N/2-J) / (N/2+J+1)
  const unsigned __int128 num = static_cast<unsigned __int128>(j.twice + 1) * binomial(n_sites, lower);
  return static_cast<std::uint64_t>(num / static_cast<unsigned>(upper + 1));
}

std::uint64_t symmetric_operator_dim(int n_sites) {
  if (n_sites < 1) {
    throw InvalidArgument("symmetric_operator_dim: N must be >= 1");
  }
  const auto n = static_cast<std::uint64_t>(n_sites);
  return (n + 3) * (n + 2) * (n + 1) / 6;
}

std::uint64_t DecompositionSummary::sum_n_times_d() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) s += multiplicities[i] * static_cast<std::uint64_t>(irrep_dims[i]);
  return s;
}

std::uint64_t DecompositionSummary::sum_n_squared() const {
  std::uint64_t s = 0;
  for (auto n : multiplicities) s += n * n;
  return s;
}

std::uint64_t DecompositionSummary::sum_d_squared() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (multiplicities[i] > 0) s += static_cast<std::uint64_t>(irrep_dims[i] * irrep_dims[i]);
  }
  return s;
}

std::uint64_t DecompositionSummary::multiplicity_of(Spin j) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == j) return multiplicities[i];
  }
  return 0;
}

DecompositionSummary collective_decomposition(int n_sites) {
  DecompositionSummary summary;
  for (Spin j : spin_ladder(n_sites)) {
    summary.labels.push_back(j);
    summary.multiplicities.push_back(multiplicity(n_sites, j));
    summary.irrep_dims.push_back(j.irrep_dim());
  }
  summary.total_dim = std::size_t{1} << n_sites;
  return summary;
}

Matrix casimir(const CollectiveModel& model) {
  if (!model.is_qubit()) {
    throw InvalidArgument("casimir: only d = 2 is supported");
  }
  // Halved Paulis here so the spectrum reads J(J+1).
  const Matrix jx = collective_sum(pauli_x(), model.n_sites) / 2.0;
  const Matrix jy = collective_sum(pauli_y(), model.n_sites) / 2.0;
  const Matrix jz = model.sz() / 2.0;
  return jx * jx + jy * jy + jz * jz;
}

AbelianModel abelian_model(std::span<const Matrix> generators, double tol) {
  if (generators.empty()) {
    throw InvalidArgument("abelian_model: no generators");
  }
  const Index d = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw DimensionMismatch("abelian_model: generators differ in dimension");
    }
    if (!is_hermitian(g, tol)) {
      throw NotHermitian("abelian_model: generators must be Hermitian");
    }
  }
  for (std::size_t a = 0; a < generators.size(); ++a) {
    for (std::size_t b = a + 1; b < generators.size(); ++b) {
      if (!is_zero(commutator(generators[a], generators[b]), tol)) {
        throw InvalidArgument("abelian_model: generators do not commute");
      }
    }
  }

  struct Block {
    Matrix vectors;
    std::vector<double> eigenvalues;
  };
  std::vector<Block> blocks{{Matrix::Identity(d, d), {}}};
  // Refine blocks one generator at a time: diagonalize the restriction and split by eigenvalue.
  for (const auto& g : generators) {
    std::vector<Block> refined;
    for (const auto& block : blocks) {
      const Matrix restricted = block.vectors.adjoint() * g * block.vectors;
      Eigen::SelfAdjointEigenSolver<Matrix> eig((restricted + restricted.adjoint()) / 2.0);
      const auto& vals = eig.eigenvalues();
      Index start = 0;
      for (Index i = 1; i <= vals.size(); ++i) {
        if (i == vals.size() || vals(i) - vals(i - 1) > 1e3 * tol) {
          Block child;
          child.vectors = block.vectors * eig.eigenvectors().middleCols(start, i - start);
          child.eigenvalues = block.eigenvalues;
          child.eigenvalues.push_back(vals.segment(start, i - start).mean());
          refined.push_back(std::move(child));
          start = i;
        }
      }
    }
    blocks = std::move(refined);
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.eigenvalues > b.eigenvalues; });

  AbelianModel model;
  model.dim = static_cast<std::size_t>(d);
  model.generators.assign(generators.begin(), generators.end());
  for (const auto& block : blocks) {
    model.projectors.push_back(block.vectors * block.vectors.adjoint());
    model.eigenvalue_table.push_back(block.eigenvalues);
  }
  return model;
}

AbelianModel dephasing_model(int n_sites, std::size_t dim_cap) {
  if (n_sites < 1) {
    throw InvalidArgument("dephasing_model: N must be >= 1");
  }
  checked_power(2, n_sites, dim_cap);
  std::vector<Matrix> gens;
  for (int j = 0; j < n_sites; ++j) {
    gens.push_back(embed_site_operator(pauli_z(), j, n_sites));
  }
  return abelian_model(gens);
}

Matrix z2m_representation(std::span<const std::uint8_t> bits, const AbelianModel& model) {
  if (bits.size() != model.projectors.size()) {
    throw DimensionMismatch("z2m_representation: bit-vector length " + std::to_string(bits.size()) +
                            " differs from sector count " + std::to_string(model.projectors.size()));
  }
  const auto d = static_cast<Index>(model.dim);
  Matrix out = Matrix::Identity(d, d);
  for (std::size_t s = 0; s < bits.size(); ++s) {
    if (bits[s] > 1) {
      throw InvalidArgument("z2m_representation: entries must be 0 or 1");
    }
    if (bits[s] == 1) {
      out -= 2.0 * model.projectors[s];
    }
  }
  return out;
}

}  // namespace dfs
