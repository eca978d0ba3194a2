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
// serialization.hpp: structured text (JSON) for models, codes, groups and reports
//
// Every document carries "schema" and "kind". Matrices are stored as
//   {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major)
// with doubles written in shortest round-trip form, so save/load is bit-exact.
// Key names are listed in SCHEMA.md.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "dfs/code_symmetry.hpp"
#include "dfs/gatework.hpp"
#include "dfs/rep_models.hpp"

namespace dfs {

inline constexpr const char* kModelSchema = "dfsbench.model/1";

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CollectiveModel& model);
nlohmann::json to_json(const AbelianModel& model);
nlohmann::json to_json(const CodeSubspace& code);
nlohmann::json to_json(const SymmetrizingGroup& group);
nlohmann::json to_json(const UniversalityReport& report);

CollectiveModel collective_model_from_json(const nlohmann::json& j);
AbelianModel abelian_model_from_json(const nlohmann::json& j);
CodeSubspace code_subspace_from_json(const nlohmann::json& j);
SymmetrizingGroup symmetrizing_group_from_json(const nlohmann::json& j);
UniversalityReport universality_report_from_json(const nlohmann::json& j);

/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace dfs
