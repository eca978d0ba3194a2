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

#pragma once

#include <cstdint>
#include <random>

#include "dfs/operator_core.hpp"

namespace dfs {

/// All randomness flows through an explicitly seeded engine.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Complex Ginibre matrix: independent entries with N(0,1/2) real and imaginary parts.
Matrix random_operator(std::size_t dim, Rng& rng);

/// GUE-style Hermitian matrix (G + G^dagger)/2.
Matrix random_hermitian(std::size_t dim, Rng& rng);

/// Hermitian matrix rescaled to unit spectral norm.
Matrix random_hermitian_unit_norm(std::size_t dim, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase of R fixed).
Matrix random_unitary(std::size_t dim, Rng& rng);

/// Normalized complex Gaussian vector.
Vector random_state(std::size_t dim, Rng& rng);

}  // namespace dfs
