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

#include "dfs/operator_core.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dfs {

namespace {

using Index = Eigen::Index;

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(what) + ": operator is not square (" + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + ")");
  }
}

void require_same_dim(std::span<const Matrix> ops, std::size_t dim, const char* what) {
  for (const auto& op : ops) {
    require_square(op, what);
    if (static_cast<std::size_t>(op.rows()) != dim) {
      throw DimensionMismatch(std::string(what) + ": expected dim " + std::to_string(dim) + ", got " +
                              std::to_string(op.rows()));
    }
  }
}

// Columns up to which null spaces come from a full SVD.
constexpr Index kJacobiMaxCols = 256;

// Orthonormal basis of the null space of m: right singular vectors with
// singular value <= cutoff. Wide problems use a column-pivoted QR of m^dagger,
// whose trailing Q columns span the null space of m.
Matrix null_vectors(const Matrix& m, double cutoff) {
  const Index cols = m.cols();
  if (m.rows() == 0) {
    return Matrix::Identity(cols, cols);
  }
  if (cols <= kJacobiMaxCols) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff) {
        ++rank;
      }
    }
    return svd.matrixV().rightCols(cols - rank);
  }
  const Matrix mh = m.adjoint();
  Eigen::ColPivHouseholderQR<Matrix> qr(mh);
  const auto r = qr.matrixR().diagonal().cwiseAbs();
  Index rank = 0;
  while (rank < r.size() && r(rank) > cutoff) {
    ++rank;
  }
  const Matrix q = qr.householderQ();
  return q.rightCols(cols - rank);
}

// Largest singular value, from the top eigenvalue of m^dagger m.
double largest_singular_value(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  const Matrix gram = m.rows() >= m.cols() ? Matrix(m.adjoint() * m) : Matrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Span over the reals of complex matrices, inner product Re Tr(a^dagger b).
class RealSpan {
 public:
  explicit RealSpan(double tol) : tol_(tol) {}

  bool try_add(const Matrix& op) {
    Matrix r = op;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : elements_) {
        r -= hs_inner(e, r).real() * e;
      }
    }
    const double rn = hs_norm(r);
    if (rn <= tol_ * std::max(1.0, hs_norm(op))) {
      return false;
    }
    elements_.push_back(r / rn);
    return true;
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::vector<Matrix> take() { return std::move(elements_); }

 private:
  double tol_;
  std::vector<Matrix> elements_;
};

std::size_t resolve_max_dim(std::size_t max_dim, std::size_t dim) {
  if (max_dim == 0) {
    return dim * dim;
  }
  return max_dim;
}

[[noreturn]] void throw_overflow(const char* what, std::size_t max_dim) {
  throw ClosureOverflow(std::string(what) + ": closure exceeds max_dim = " + std::to_string(max_dim));
}

std::size_t common_dim(std::span<const Matrix> ops, const char* what) {
  if (ops.empty()) {
    throw InvalidArgument(std::string(what) + ": empty generator list");
  }
  require_square(ops.front(), what);
  const auto dim = static_cast<std::size_t>(ops.front().rows());
  require_same_dim(ops, dim, what);
  return dim;
}

}  // namespace

bool is_square(const Matrix& a) { return a.rows() == a.cols(); }

double max_abs_entry(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& a, double tol) {
  return is_square(a) && max_abs_entry(a - a.adjoint()) <= tol;
}

bool is_unitary(const Matrix& a, double tol) {
  return is_square(a) && max_abs_entry(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= tol;
}

bool is_zero(const Matrix& a, double tol) { return max_abs_entry(a) <= tol; }

void check_dim_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw DimensionCapExceeded("dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  }
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("hs_inner: operand shapes differ");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix matrix_exp(const Matrix& a) {
  require_square(a, "matrix_exp");
  if (a.size() == 0) {
    return a;
  }
  return a.exp();
}

Matrix principal_log_unitary(const Matrix& u, double tol, double branch_tol) {
  require_square(u, "principal_log_unitary");
  if (!is_unitary(u, tol)) {
    throw NotUnitary("principal_log_unitary: input is not unitary within tol");
  }
  const Index n = u.rows();
  // Unitary matrices are normal, so the Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& z = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Eigen::VectorXd phases(n);
  for (Index i = 0; i < n; ++i) {
    const double phase = std::arg(t(i, i));
    if (std::numbers::pi - std::abs(phase) <= branch_tol) {
      throw BranchCutAmbiguity("principal_log_unitary: eigenphase " + std::to_string(phase) +
                               " lies on the branch cut at -pi");
    }
    phases(i) = phase;
  }
  Matrix h = z * phases.cast<Complex>().asDiagonal() * z.adjoint();
  return (h + h.adjoint()) / 2.0;
}

Subspace::Subspace(std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), columns_(static_cast<Index>(ambient_dim), 0) {}

Subspace::Subspace(std::size_t ambient_dim, Matrix columns)
    : ambient_dim_(ambient_dim), columns_(std::move(columns)) {
  if (static_cast<std::size_t>(columns_.rows()) != ambient_dim_) {
    throw DimensionMismatch("Subspace: column length differs from ambient dimension");
  }
}

OperatorBasis::OperatorBasis(std::size_t dim, double tol) : dim_(dim), tol_(tol) {
  if (dim == 0) {
    throw InvalidArgument("OperatorBasis: dim must be positive");
  }
}

OperatorBasis OperatorBasis::from_span(std::size_t dim, std::span<const Matrix> ops, double tol) {
  require_same_dim(ops, dim, "OperatorBasis::from_span");
  OperatorBasis basis(dim, tol);
  for (const auto& op : ops) {
    basis.try_add(op);
  }
  return basis;
}

bool OperatorBasis::try_add(const Matrix& op) {
  if (static_cast<std::size_t>(op.rows()) != dim_ || op.rows() != op.cols()) {
    throw DimensionMismatch("OperatorBasis::try_add: operator has the wrong shape");
  }
  if (elements_.size() >= dim_ * dim_) {
    return false;
  }
  Matrix r = op;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : elements_) {
      r -= hs_inner(e, r) * e;
    }
  }
  const double rn = hs_norm(r);
  if (rn <= tol_ * std::max(1.0, hs_norm(op))) {
    return false;
  }
  elements_.push_back(r / rn);
  return true;
}

Matrix OperatorBasis::project(const Matrix& op) const {
  if (static_cast<std::size_t>(op.rows()) != dim_ || op.rows() != op.cols()) {
    throw DimensionMismatch("OperatorBasis::project: operator has the wrong shape");
  }
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  for (const auto& e : elements_) {
    out += hs_inner(e, op) * e;
  }
  return out;
}

double OperatorBasis::residual(const Matrix& op) const { return hs_norm(op - project(op)); }

Matrix OperatorBasis::gram() const {
  const auto k = static_cast<Index>(elements_.size());
  Matrix g(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      g(i, j) = hs_inner(elements_[i], elements_[j]);
    }
  }
  return g;
}

Matrix OperatorBasis::span_projector() const {
  const auto n = static_cast<Index>(dim_ * dim_);
  Matrix b(n, static_cast<Index>(elements_.size()));
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    b.col(static_cast<Index>(i)) = elements_[i].reshaped();
  }
  return b * b.adjoint();
}

Subspace common_null_space(std::span<const Matrix> ops, std::size_t dim, double tol) {
  require_same_dim(ops, dim, "common_null_space");
  const auto d = static_cast<Index>(dim);
  if (ops.empty()) {
    return Subspace(dim, Matrix::Identity(d, d));
  }
  Matrix stacked(d * static_cast<Index>(ops.size()), d);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    stacked.middleRows(static_cast<Index>(i) * d, d) = ops[i];
  }
  const double smax = largest_singular_value(stacked);
  if (smax == 0.0) {
    return Subspace(dim, Matrix::Identity(d, d));
  }
  return Subspace(dim, null_vectors(stacked, tol * smax));
}

OperatorBasis lie_closure(std::span<const Matrix> generators, double tol, std::size_t max_dim) {
  const std::size_t dim = common_dim(generators, "lie_closure");
  max_dim = resolve_max_dim(max_dim, dim);
  OperatorBasis basis(dim, tol);
  for (const auto& g : generators) {
    if (basis.try_add(g) && basis.size() > max_dim) {
      throw_overflow("lie_closure", max_dim);
    }
  }
  // Breadth-first: element i is paired with every element that precedes it.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Matrix c = commutator(basis[j], basis[i]);
      if (basis.try_add(c) && basis.size() > max_dim) {
        throw_overflow("lie_closure", max_dim);
      }
    }
  }
  return basis;
}

OperatorBasis associative_closure(std::span<const Matrix> generators, double tol, std::size_t max_dim) {
  const std::size_t dim = common_dim(generators, "associative_closure");
  max_dim = resolve_max_dim(max_dim, dim);
  OperatorBasis basis(dim, tol);
  const auto add = [&](const Matrix& op) {
    if (basis.try_add(op) && basis.size() > max_dim) {
      throw_overflow("associative_closure", max_dim);
    }
  };
  add(Matrix::Identity(static_cast<Index>(dim), static_cast<Index>(dim)));
  for (const auto& g : generators) {
    add(g);
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(basis[j] * basis[i]);
      if (j != i) {
        add(basis[i] * basis[j]);
      }
    }
  }
  return basis;
}

std::vector<Matrix> real_lie_closure(std::span<const Matrix> generators, double tol, std::size_t max_dim) {
  const std::size_t dim = common_dim(generators, "real_lie_closure");
  // u(d) has real dimension d^2; gl(d, C) as a real space has 2 d^2.
  max_dim = max_dim == 0 ? 2 * dim * dim : max_dim;
  RealSpan span(tol);
  for (const auto& g : generators) {
    if (span.try_add(g) && span.size() > max_dim) {
      throw_overflow("real_lie_closure", max_dim);
    }
  }
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Matrix c = commutator(span.elements()[j], span.elements()[i]);
      if (span.try_add(c) && span.size() > max_dim) {
        throw_overflow("real_lie_closure", max_dim);
      }
    }
  }
  return span.take();
}

OperatorBasis commutant(const OperatorBasis& algebra_basis, double tol) {
  const std::size_t dim = algebra_basis.dim();
  const auto d = static_cast<Index>(dim);
  const Index n = d * d;
  const auto& ops = algebra_basis.elements();

  // ad_a(X) = aX - Xa acting on column-major vec(X).
  const auto apply_ad = [d](const Matrix& a, const Matrix& cols) {
    Matrix out(cols.rows(), cols.cols());
    for (Index c = 0; c < cols.cols(); ++c) {
      const Eigen::Map<const Matrix> x(cols.col(c).data(), d, d);
      Eigen::Map<Matrix> y(out.col(c).data(), d, d);
      y.noalias() = a * x;
      y.noalias() -= x * a;
    }
    return out;
  };
  // Scale for the relative cutoff: |ad_a| <= 2 |a|_2.
  double scale = 0.0;
  for (const auto& a : ops) {
    scale = std::max(scale, 2.0 * largest_singular_value(a));
  }

  Matrix kernel = Matrix::Identity(n, n);
  if (scale > 0.0) {
    const double cutoff = tol * scale;
    for (const auto& a : ops) {
      if (kernel.cols() == 0) {
        break;
      }
      const Matrix image = apply_ad(a, kernel);
      if (image.norm() <= cutoff) {
        continue;
      }
      kernel = kernel * null_vectors(image, cutoff);
    }
  }

  OperatorBasis out(dim, tol);
  for (Index c = 0; c < kernel.cols(); ++c) {
    out.try_add(kernel.col(c).reshaped(d, d));
  }
  return out;
}

}  // namespace dfs
