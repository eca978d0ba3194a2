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

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "dfs/random.hpp"
#include "dfs/rep_models.hpp"
#include "test_support.hpp"

namespace dfs {
namespace {

using testing::binom;
using testing::eye;
using testing::max_diff;

// n_N(J) = #(states with S^z weight M = J) - #(M = J + 1), counted directly.
double weight_count_multiplicity(int n, Spin j) {
  const auto count = [n](int twice_m) {
    if ((n + twice_m) % 2 != 0) return 0.0;
    return binom(n, (n + twice_m) / 2);
  };
  return count(j.twice) - count(j.twice + 2);
}

TEST(Spin, LabelArithmetic) {
  const Spin half{1};
  EXPECT_DOUBLE_EQ(half.value(), 0.5);
  EXPECT_EQ(half.irrep_dim(), 2);
  EXPECT_DOUBLE_EQ(half.casimir_eigenvalue(), 0.75);
  EXPECT_EQ(to_string(Spin{3}), "3/2");
  EXPECT_EQ(to_string(Spin{4}), "2");
  EXPECT_LT(Spin{1}, Spin{2});
}

TEST(Collective, RaisingCommutationRelation) {
  for (int n = 1; n <= 4; ++n) {
    const auto m = collective_generators(n);
    EXPECT_EQ(m.dim, std::size_t{1} << n);
    EXPECT_LT(max_diff(commutator(m.sz(), m.splus()), 2.0 * m.splus()), 1e-12);
    EXPECT_LT(max_diff(m.sminus(), m.splus().adjoint()), 1e-15);
    for (const auto& h : m.hermitian_generators()) EXPECT_TRUE(is_hermitian(h, 1e-14));
  }
}

TEST(Collective, SingleSiteIsRawPauli) {
  const auto m = collective_generators(1);
  EXPECT_LT(max_diff(m.sz(), pauli_z()), 1e-15);
  EXPECT_LT(max_diff(m.splus(), sigma_plus()), 1e-15);
  EXPECT_NEAR(std::abs(sigma_plus()(0, 1)), 1.0, 0.0);
}

TEST(Collective, QuditGeneratorsAndErrors) {
  const auto m = collective_generators(2, 3);
  EXPECT_EQ(m.dim, 9u);
  EXPECT_EQ(m.generators.size(), 8u);
  EXPECT_THROW(m.sz(), InvalidArgument);
  EXPECT_THROW(collective_generators(0), InvalidArgument);
  EXPECT_THROW(collective_generators(2, 1), InvalidArgument);
  EXPECT_THROW(collective_generators(9), DimensionCapExceeded);
  EXPECT_THROW(embed_site_operator(pauli_x(), 3, 3), InvalidArgument);
}

TEST(Permutations, ConventionMovesSiteJToSigmaJ) {
  const int n = 3;
  const std::vector<int> sigma{1, 2, 0};
  const Matrix p = permutation_operator(sigma, n);
  for (int x = 0; x < 8; ++x) {
    int bits[3] = {(x >> 2) & 1, (x >> 1) & 1, x & 1};
    int moved[3] = {0, 0, 0};
    for (int j = 0; j < n; ++j) moved[sigma[static_cast<std::size_t>(j)]] = bits[j];
    const int y = moved[0] * 4 + moved[1] * 2 + moved[2];
    EXPECT_NEAR(std::abs(p(y, x)), 1.0, 0.0);
    EXPECT_NEAR(p.col(x).cwiseAbs().sum(), 1.0, 0.0);
  }
}

TEST(Permutations, HomomorphismExhaustive) {
  for (int n = 1; n <= 4; ++n) {
    const auto perms = all_permutations(n);
    std::size_t factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= static_cast<std::size_t>(k);
    ASSERT_EQ(perms.size(), factorial);
    EXPECT_TRUE(std::is_sorted(perms.begin(), perms.end()));
    std::vector<Matrix> ops;
    for (const auto& s : perms) ops.push_back(permutation_operator(s, n));
    for (std::size_t a = 0; a < perms.size(); ++a) {
      EXPECT_LT(max_diff(ops[a] * permutation_operator(inverse(perms[a]), n), eye(ops[a].rows())), 1e-15);
      for (std::size_t b = 0; b < perms.size(); ++b) {
        const Matrix lhs = ops[a] * ops[b];
        const Matrix rhs = permutation_operator(compose(perms[a], perms[b]), n);
        ASSERT_LT(max_diff(lhs, rhs), 1e-15) << "n=" << n << " a=" << a << " b=" << b;
      }
    }
  }
  EXPECT_FALSE(is_permutation(std::vector<int>{0, 0, 1}, 3));
  EXPECT_THROW(permutation_operator(std::vector<int>{0, 0}, 2), InvalidArgument);
}

TEST(Permutations, CommuteWithCollectiveGenerators) {
  const auto m = collective_generators(3);
  for (const auto& s : all_permutations(3)) {
    const Matrix p = permutation_operator(s, 3);
    for (const auto& g : m.generators) EXPECT_LT(hs_norm(commutator(p, g)), 1e-13);
  }
}

TEST(Multiplicity, MatchesWeightCounting) {
  for (int n = 1; n <= 30; ++n) {
    for (const Spin j : spin_ladder(n)) {
      EXPECT_EQ(static_cast<double>(multiplicity(n, j)), weight_count_multiplicity(n, j)) << n << " " << j.twice;
    }
  }
  EXPECT_EQ(multiplicity(2, Spin{0}), 1u);
  EXPECT_EQ(multiplicity(4, Spin{0}), 2u);
  EXPECT_EQ(multiplicity(6, Spin{0}), 5u);
  EXPECT_EQ(multiplicity(3, Spin{1}), 2u);
  EXPECT_THROW(multiplicity(3, Spin{0}), InvalidArgument);
  EXPECT_THROW(multiplicity(2, Spin{6}), InvalidArgument);
  EXPECT_THROW(multiplicity(61, Spin{1}), InvalidArgument);
}

TEST(SpinLadder, AscendingFromZeroOrHalf) {
  const auto even = spin_ladder(4);
  ASSERT_EQ(even.size(), 3u);
  EXPECT_EQ(even.front().twice, 0);
  EXPECT_EQ(even.back().twice, 4);
  const auto odd = spin_ladder(3);
  ASSERT_EQ(odd.size(), 2u);
  EXPECT_EQ(odd.front().twice, 1);
}

TEST(Decomposition, BookkeepingIdentities) {
  const double catalan_like[] = {1, 2, 5, 14, 42, 132};
  for (int n = 1; n <= 6; ++n) {
    const auto s = collective_decomposition(n);
    EXPECT_EQ(s.sum_n_times_d(), std::uint64_t{1} << n);
    EXPECT_EQ(static_cast<double>(s.sum_n_squared()), catalan_like[n - 1]);
    EXPECT_EQ(s.total_dim, std::size_t{1} << n);
    EXPECT_EQ(symmetric_operator_dim(n), static_cast<std::uint64_t>((n + 3) * (n + 2) * (n + 1) / 6));
  }
  EXPECT_EQ(collective_decomposition(4).multiplicity_of(Spin{0}), 2u);
  EXPECT_EQ(collective_decomposition(3).multiplicity_of(Spin{0}), 0u);
}

TEST(Decomposition, NumericAlgebraDimensionsMatchClosedForms) {
  for (int n = 1; n <= 4; ++n) {
    const auto m = collective_generators(n);
    const auto s = collective_decomposition(n);
    EXPECT_EQ(associative_closure(m.generators).size(), symmetric_operator_dim(n));
    EXPECT_EQ(commutant(OperatorBasis::from_span(m.dim, m.generators)).size(), s.sum_n_squared());
  }
}

TEST(Casimir, SpectrumIsJTimesJPlusOne) {
  for (int n = 1; n <= 5; ++n) {
    const auto m = collective_generators(n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(casimir(m));
    const auto s = collective_decomposition(n);
    std::map<long, std::size_t> expected;
    for (std::size_t k = 0; k < s.labels.size(); ++k) {
      expected[std::lround(4 * s.labels[k].casimir_eigenvalue())] +=
          s.multiplicities[k] * static_cast<std::size_t>(s.irrep_dims[k]);
    }
    std::map<long, std::size_t> found;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = 4 * es.eigenvalues()(i);
      EXPECT_NEAR(v, std::round(v), 1e-9);
      ++found[std::lround(v)];
    }
    EXPECT_EQ(found, expected) << "n=" << n;
  }
  EXPECT_THROW(casimir(collective_generators(2, 3)), InvalidArgument);
}

TEST(Abelian, DephasingSingleQubitSectorOrder) {
  const auto m = dephasing_model(1);
  ASSERT_EQ(m.sector_count(), 2u);
  EXPECT_NEAR(m.projectors[0](0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(m.projectors[1](1, 1).real(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.eigenvalue_table[0][0], 1.0);
  EXPECT_DOUBLE_EQ(m.eigenvalue_table[1][0], -1.0);
}

TEST(Abelian, ProjectorsResolveIdentity) {
  const auto m = dephasing_model(3);
  ASSERT_EQ(m.sector_count(), 8u);
  Matrix sum = Matrix::Zero(8, 8);
  for (const auto& p : m.projectors) {
    EXPECT_LT(max_diff(p * p, p), 1e-12);
    sum += p;
  }
  EXPECT_LT(max_diff(sum, eye(8)), 1e-12);
  // Collective S^z alone lumps weights into N + 1 sectors.
  const std::vector<Matrix> sz{collective_generators(3).sz()};
  EXPECT_EQ(abelian_model(sz).sector_count(), 4u);
}

TEST(Abelian, Z2mAverageEqualsPinching) {
  auto rng = make_rng(8);
  for (int n = 1; n <= 2; ++n) {
    const auto m = dephasing_model(n);
    const std::size_t sectors = m.sector_count();
    ASSERT_LE(sectors, 4u);
    const Matrix x = random_operator(m.dim, rng);
    Matrix avg = Matrix::Zero(x.rows(), x.cols());
    for (std::size_t mask = 0; mask < (std::size_t{1} << sectors); ++mask) {
      std::vector<std::uint8_t> bits(sectors);
      for (std::size_t s = 0; s < sectors; ++s) bits[s] = static_cast<std::uint8_t>((mask >> s) & 1u);
      const Matrix u = z2m_representation(bits, m);
      EXPECT_TRUE(is_unitary(u, 1e-12));
      avg += u * x * u.adjoint();
    }
    avg /= static_cast<double>(std::size_t{1} << sectors);
    Matrix pinched = Matrix::Zero(x.rows(), x.cols());
    for (const auto& p : m.projectors) pinched += p * x * p;
    EXPECT_LT(max_diff(avg, pinched), 1e-12);
  }
}

TEST(Abelian, Errors) {
  const std::vector<Matrix> noncommuting{pauli_x(), pauli_z()};
  EXPECT_THROW(abelian_model(noncommuting), InvalidArgument);
  const std::vector<Matrix> nonherm{sigma_plus()};
  EXPECT_THROW(abelian_model(nonherm), NotHermitian);
  const auto m = dephasing_model(1);
  EXPECT_THROW(z2m_representation(std::vector<std::uint8_t>{1}, m), DimensionMismatch);
  EXPECT_THROW(z2m_representation(std::vector<std::uint8_t>{2, 0}, m), InvalidArgument);
}

}  // namespace
}  // namespace dfs
