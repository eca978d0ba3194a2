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
#include "dfs/code_symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace dfs {

namespace {

using Index = Eigen::Index;

// Looks up unitaries up to rounding, optionally modulo a global phase.
class ElementIndex {
 public:
  ElementIndex(bool projective, double tol) : projective_(projective), tol_(tol) {}

  /// Index of a stored element matching m, or -1.
  long find(const Matrix& m) const {
    const Matrix c = canonical(m);
    const auto it = buckets_.find(key(c));
    if (it != buckets_.end()) {
      for (std::size_t idx : it->second) {
        if (distance(c, idx) <= tol_) return static_cast<long>(idx);
      }
    }
    // Rounding can split near-equal keys; fall back to a scan.
    for (std::size_t idx = 0; idx < canon_.size(); ++idx) {
      if (distance(c, idx) <= tol_) return static_cast<long>(idx);
    }
    return -1;
  }

  /// Residual to the closest stored element.
  double nearest(const Matrix& m) const {
    const Matrix c = canonical(m);
    const auto it = buckets_.find(key(c));
    if (it != buckets_.end()) {
      for (std::size_t idx : it->second) {
        const double r = distance(c, idx);
        if (r <= tol_) return r;
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < canon_.size(); ++idx) {
      best = std::min(best, distance(c, idx));
    }
    return best;
  }

  void insert(const Matrix& m) {
    canon_.push_back(canonical(m));
    buckets_[key(canon_.back())].push_back(canon_.size() - 1);
  }

  std::size_t size() const { return canon_.size(); }

 private:
  Matrix canonical(const Matrix& m) const {
    if (!projective_) return m;
    for (Index i = 0; i < m.size(); ++i) {
      const Complex v = m.data()[i];
      if (std::abs(v) > 1e-3) {
        return m * (std::conj(v) / std::abs(v));
      }
    }
    return m;
  }

  std::vector<long long> key(const Matrix& c) const {
    const Index n = std::min<Index>(c.size(), 8);
    std::vector<long long> k;
    k.reserve(static_cast<std::size_t>(2 * n));
    for (Index i = 0; i < n; ++i) {
      k.push_back(std::llround(c.data()[i].real() * 1e5));
      k.push_back(std::llround(c.data()[i].imag() * 1e5));
    }
    return k;
  }

  double distance(const Matrix& c, std::size_t idx) const {
    if (!projective_) return (c - canon_[idx]).norm();
    // min over phases of |c - e^{i phi} e|, attained at phi = arg <e, c>
    const Complex overlap = hs_inner(canon_[idx], c);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
    return (c - phase * canon_[idx]).norm();
  }

  bool projective_;
  double tol_;
  std::vector<Matrix> canon_;
  std::map<std::vector<long long>, std::vector<std::size_t>> buckets_;
};

Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXcd phases =
      eig.eigenvalues().unaryExpr([](double v) { return std::polar(1.0, v); });
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

CodeSubspace find_code(std::span<const Matrix> generators, double tol) {
  if (generators.empty()) {
    throw InvalidArgument("find_code: no generators");
  }
  const auto dim = static_cast<std::size_t>(generators.front().rows());
  const Subspace kernel = common_null_space(generators, dim, tol);
  CodeSubspace code;
  code.ambient_dim = dim;
  code.code_dim = kernel.dim();
  code.isometry = kernel.columns();
  return code;
}

IrrepBasis irrep_basis(const CollectiveModel& model, double tol) {
  if (!model.is_qubit()) {
    throw InvalidArgument("irrep_basis: only d = 2 is supported");
  }
  const auto d = static_cast<Index>(model.dim);
  const std::vector<Spin> ladder = spin_ladder(model.n_sites);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(casimir(model));

  std::vector<std::vector<Index>> columns_by_spin(ladder.size());
  for (Index i = 0; i < d; ++i) {
    const double value = eig.eigenvalues()(i);
    bool placed = false;
    for (std::size_t s = 0; s < ladder.size(); ++s) {
      if (std::abs(value - ladder[s].casimir_eigenvalue()) < 1e-6) {
        columns_by_spin[s].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw DecompositionFailure("irrep_basis: Casimir eigenvalue " + std::to_string(value) +
                                 " matches no J(J+1)");
    }
  }

  IrrepBasis basis;
  basis.change_of_basis.resize(d, d);
  Index next = 0;
  const Matrix& sz = model.sz();
  const Matrix& sminus = model.sminus();
  const Matrix& splus = model.splus();

  for (std::size_t s = 0; s < ladder.size(); ++s) {
    const Spin j = ladder[s];
    const auto& cols = columns_by_spin[s];
    if (cols.empty()) continue;
    Matrix eigenspace(d, static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      eigenspace.col(static_cast<Index>(c)) = eig.eigenvectors().col(cols[c]);
    }
    // Highest weight: S^z = 2J (raw Paulis) and S^+ v = 0 inside the eigenspace.
    const Matrix top = (sz - Complex(j.twice, 0.0) * Matrix::Identity(d, d)) * eigenspace;
    const Matrix raise = splus * eigenspace;
    Matrix stacked(2 * d, eigenspace.cols());
    stacked << top, raise;
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    Index rank = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > tol * std::max(1.0, svd.singularValues()(0))) ++rank;
    }
    const Matrix hw_space = eigenspace * svd.matrixV().rightCols(eigenspace.cols() - rank);
    const Index copies = hw_space.cols();
    if (copies * j.irrep_dim() != eigenspace.cols()) {
      throw DecompositionFailure("irrep_basis: J = " + to_string(j) + " eigenspace of dim " +
                                 std::to_string(eigenspace.cols()) + " holds " + std::to_string(copies) +
                                 " highest-weight vectors");
    }

    // Deterministic choice inside the highest-weight space: project e_0, e_1, ... in order.
    const Matrix hw_proj = hw_space * hw_space.adjoint();
    std::vector<Vector> chosen;
    for (Index e = 0; e < d && static_cast<Index>(chosen.size()) < copies; ++e) {
      Vector r = hw_proj.col(e);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : chosen) r -= v.dot(r) * v;
      }
      if (r.norm() > 1e-6) {
        chosen.push_back(r / r.norm());
      }
    }
    if (static_cast<Index>(chosen.size()) != copies) {
      throw DecompositionFailure("irrep_basis: could not resolve the highest-weight degeneracy for J = " +
                                 to_string(j));
    }

    for (Index n = 0; n < copies; ++n) {
      Vector v = chosen[static_cast<std::size_t>(n)];
      for (int l = 1; l <= j.irrep_dim(); ++l) {
        if (l > 1) {
          v = sminus * v;
          const double norm = v.norm();
          if (norm < tol) {
            throw DecompositionFailure("irrep_basis: lowering chain terminated early");
          }
          v /= norm;
        }
        basis.change_of_basis.col(next++) = v;
        basis.labels.push_back(IrrepLabel{j, static_cast<int>(n) + 1, l});
      }
    }
  }
  if (next != d || !is_unitary(basis.change_of_basis, 1e-8)) {
    throw DecompositionFailure("irrep_basis: resulting change of basis is not unitary");
  }
  return basis;
}

DecompositionSummary summarize(const IrrepBasis& basis) {
  std::map<Spin, std::uint64_t> copies;
  for (const auto& label : basis.labels) {
    if (label.level == 1) ++copies[label.j];
  }
  DecompositionSummary summary;
  for (const auto& [j, n] : copies) {
    summary.labels.push_back(j);
    summary.multiplicities.push_back(n);
    summary.irrep_dims.push_back(j.irrep_dim());
  }
  summary.total_dim = basis.dim();
  return summary;
}

Matrix commutant_projection(const Matrix& x, const OperatorBasis& commutant_basis) {
  return commutant_basis.project(x);
}

double closure_defect(std::span<const Matrix> elements) {
  ElementIndex index(true, 1e-6);
  for (const auto& e : elements) index.insert(e);
  double worst = 0.0;
  for (const auto& g : elements) {
    for (const auto& h : elements) {
      worst = std::max(worst, index.nearest(g * h));
    }
  }
  return worst;
}

SymmetrizingGroup make_symmetrizing_group(std::vector<Matrix> elements, double tol) {
  if (elements.empty()) {
    throw InvalidArgument("make_symmetrizing_group: empty element list");
  }
  for (const auto& e : elements) {
    if (!is_unitary(e, tol)) {
      throw NotUnitary("make_symmetrizing_group: element is not unitary");
    }
  }
  SymmetrizingGroup group;
  group.tol = tol;
  group.closure_defect = closure_defect(elements);
  group.closure_verified = group.closure_defect <= tol * static_cast<double>(elements.front().rows());
  group.elements = std::move(elements);
  return group;
}

std::vector<Matrix> generate_group(std::span<const Matrix> generators, double tol, std::size_t max_order) {
  if (generators.empty()) {
    throw InvalidArgument("generate_group: no generators");
  }
  const Index d = generators.front().rows();
  ElementIndex index(false, tol);
  std::vector<Matrix> elements{Matrix::Identity(d, d)};
  index.insert(elements.front());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Matrix product = elements[i] * g;
      if (index.find(product) < 0) {
        if (elements.size() >= max_order) {
          throw ClosureOverflow("generate_group: order exceeds " + std::to_string(max_order));
        }
        index.insert(product);
        elements.push_back(std::move(product));
      }
    }
  }
  return elements;
}

Matrix finite_group_average(const Matrix& x, const SymmetrizingGroup& group) {
  if (group.elements.empty()) {
    throw InvalidArgument("finite_group_average: empty group");
  }
  if (group.elements.front().rows() != x.rows() || x.rows() != x.cols()) {
    throw DimensionMismatch("finite_group_average: operator and group dimensions differ");
  }
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  for (const auto& e : group.elements) {
    acc.noalias() += e * x * e.adjoint();
  }
  return acc / static_cast<double>(group.elements.size());
}

Matrix abelian_symmetrize(const Matrix& x, const AbelianModel& model) {
  if (static_cast<std::size_t>(x.rows()) != model.dim || x.rows() != x.cols()) {
    throw DimensionMismatch("abelian_symmetrize: operator and model dimensions differ");
  }
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  for (const auto& p : model.projectors) {
    acc.noalias() += p * x * p;
  }
  return acc;
}

Matrix n2_clock() {
  const CollectiveModel model = collective_generators(2);
  return matrix_exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0) * model.sz());
}

Matrix n2_shift(double angle) {
  const CollectiveModel model = collective_generators(2);
  const Matrix& sp = model.splus();
  const Matrix a = std::pow(2.0, -0.5) * sp - 0.5 * sp * sp;
  return matrix_exp(angle * (a - a.adjoint()));
}

std::vector<Matrix> n2_products(double angle) {
  const Matrix q = n2_clock();
  const Matrix p = n2_shift(angle);
  std::vector<Matrix> out;
  Matrix qn = Matrix::Identity(4, 4);
  for (int n = 0; n < 3; ++n) {
    Matrix pm = Matrix::Identity(4, 4);
    for (int m = 0; m < 3; ++m) {
      out.push_back(qn * pm);
      pm = pm * p;
    }
    qn = qn * q;
  }
  return out;
}

SymmetrizingGroup build_n2_group() {
  const std::vector<Matrix> gens{n2_clock(), n2_shift(kN2ShiftAngle)};
  return make_symmetrizing_group(generate_group(gens, 1e-9, 1000), 1e-9);
}

std::vector<Matrix> weyl_heisenberg_group(int d) {
  if (d < 1) {
    throw InvalidArgument("weyl_heisenberg_group: d must be >= 1");
  }
  if (d == 1) {
    return {Matrix::Identity(1, 1)};
  }
  Matrix x = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  const double step = 2.0 * std::numbers::pi / d;
  for (int k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, step * k);
  }
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d * d * d));
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      const Matrix base = xa * zb;
      for (int c = 0; c < d; ++c) {
        out.push_back(std::polar(1.0, step * c) * base);
      }
      zb = zb * z;
    }
    xa = xa * x;
  }
  return out;
}

SymmetrizingGroup build_glued_group(const IrrepBasis& basis, const DecompositionSummary& summary) {
  const auto d = static_cast<Index>(basis.dim());
  if (basis.change_of_basis.rows() != d || basis.change_of_basis.cols() != d) {
    throw InvalidArgument("build_glued_group: change of basis does not cover the space");
  }
  const DecompositionSummary census = summarize(basis);
  if (summary.total_dim != basis.dim() || summary.sum_n_times_d() != basis.dim()) {
    throw InvalidArgument("build_glued_group: summary total dimension disagrees with the basis");
  }
  for (std::size_t i = 0; i < summary.labels.size(); ++i) {
    if (census.multiplicity_of(summary.labels[i]) != summary.multiplicities[i]) {
      throw InvalidArgument("build_glued_group: multiplicity of J = " + to_string(summary.labels[i]) +
                            " disagrees with the basis");
    }
  }

  struct Block {
    Index offset;
    Index copies;
    int irrep_dim;
    std::vector<Matrix> group;
  };
  std::vector<Block> blocks;
  Index offset = 0;
  for (std::size_t i = 0; i < census.labels.size(); ++i) {
    const auto copies = static_cast<Index>(census.multiplicities[i]);
    const int dj = census.irrep_dims[i];
    blocks.push_back(Block{offset, copies, dj, weyl_heisenberg_group(dj)});
    offset += copies * dj;
  }

  std::size_t order = 1;
  for (const auto& b : blocks) order *= b.group.size();

  const Matrix& u = basis.change_of_basis;
  std::vector<Matrix> elements;
  elements.reserve(order);
  std::vector<std::size_t> digits(blocks.size(), 0);
  for (std::size_t count = 0; count < order; ++count) {
    Matrix local = Matrix::Zero(d, d);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      const Matrix block = kron(Matrix::Identity(b.copies, b.copies), b.group[digits[bi]]);
      local.block(b.offset, b.offset, block.rows(), block.cols()) = block;
    }
    elements.push_back(u * local * u.adjoint());
    // Mixed-radix increment, last block fastest.
    for (std::size_t bi = blocks.size(); bi-- > 0;) {
      if (++digits[bi] < blocks[bi].group.size()) break;
      digits[bi] = 0;
    }
  }
  if (order <= 1024) {
    return make_symmetrizing_group(std::move(elements), 1e-9);
  }
  SymmetrizingGroup group;
  group.elements = std::move(elements);
  group.tol = 1e-9;
  group.closure_defect = std::numeric_limits<double>::quiet_NaN();
  return group;
}

std::vector<Matrix> hermitian_lie_basis(std::span<const Matrix> hermitian_generators, double tol) {
  std::vector<Matrix> anti;
  for (const auto& h : hermitian_generators) {
    if (!is_hermitian(h, 1e-9)) {
      throw NotHermitian("hermitian_lie_basis: generator is not Hermitian");
    }
    anti.push_back(Complex(0.0, 1.0) * h);
  }
  std::vector<Matrix> out = real_lie_closure(anti, tol);
  for (auto& m : out) {
    m = Complex(0.0, -1.0) * m;
    m = ((m + m.adjoint()) / 2.0).eval();
  }
  return out;
}

MonteCarloTwirl monte_carlo_twirl(const Matrix& x, std::span<const Matrix> hermitian_basis, Rng& rng,
                                  const MonteCarloOptions& options) {
  if (hermitian_basis.empty() || options.samples < 2) {
    throw InvalidArgument("monte_carlo_twirl: need a non-empty basis and at least two samples");
  }
  const Index d = x.rows();
  std::normal_distribution<double> normal(0.0, options.coefficient_scale);
  Matrix sum = Matrix::Zero(d, d);
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    Matrix u = Matrix::Identity(d, d);
    for (int k = 0; k < options.walk_length; ++k) {
      Matrix h = Matrix::Zero(d, d);
      for (const auto& b : hermitian_basis) {
        h += normal(rng) * b;
      }
      u = exp_i_hermitian(h) * u;
    }
    const Matrix y = u * x * u.adjoint();
    sum += y;
    sum_sq += y.squaredNorm();
  }
  const auto n = static_cast<double>(options.samples);
  MonteCarloTwirl out;
  out.mean = sum / n;
  out.samples = options.samples;
  const double spread = std::max(0.0, sum_sq - n * out.mean.squaredNorm());
  out.standard_error = std::sqrt(spread / (n * (n - 1.0)));
  return out;
}

}  // namespace dfs
