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
#include "dfs/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace dfs {

namespace {

using nlohmann::json;
using Index = Eigen::Index;

void expect_kind(const json& j, const char* kind) {
  if (!j.is_object() || j.value("schema", "") != kModelSchema) {
    throw InvalidArgument(std::string("expected schema ") + kModelSchema);
  }
  if (j.value("kind", "") != kind) {
    throw InvalidArgument(std::string("expected kind '") + kind + "', got '" + j.value("kind", "") + "'");
  }
}

json header(const char* kind) { return json{{"schema", kModelSchema}, {"kind", kind}}; }

json matrices_to_json(const std::vector<Matrix>& ms) {
  json arr = json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<Matrix> matrices_from_json(const json& arr) {
  std::vector<Matrix> out;
  for (const auto& j : arr) out.push_back(matrix_from_json(j));
  return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw InvalidArgument("matrix: data length does not match rows x cols");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, ++k) {
      const auto& pair = data[k];
      if (!pair.is_array() || pair.size() != 2) {
        throw InvalidArgument("matrix: entries must be [re, im] pairs");
      }
      m(r, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return m;
}

json to_json(const CollectiveModel& model) {
  json j = header("collective");
  j["n_sites"] = model.n_sites;
  j["local_dim"] = model.local_dim;
  j["dim"] = model.dim;
  json ops = json::array();
  for (std::size_t i = 0; i < model.generators.size(); ++i) {
    ops.push_back(json{{"name", model.generator_names[i]}, {"matrix", matrix_to_json(model.generators[i])}});
  }
  j["generators"] = std::move(ops);
  return j;
}

CollectiveModel collective_model_from_json(const json& j) {
  expect_kind(j, "collective");
  CollectiveModel model;
  model.n_sites = j.at("n_sites").get<int>();
  model.local_dim = j.at("local_dim").get<int>();
  model.dim = j.at("dim").get<std::size_t>();
  for (const auto& op : j.at("generators")) {
    model.generator_names.push_back(op.at("name").get<std::string>());
    model.generators.push_back(matrix_from_json(op.at("matrix")));
    if (static_cast<std::size_t>(model.generators.back().rows()) != model.dim) {
      throw InvalidArgument("collective model: generator dimension differs from dim");
    }
  }
  return model;
}

json to_json(const AbelianModel& model) {
  json j = header("abelian");
  j["dim"] = model.dim;
  j["generators"] = matrices_to_json(model.generators);
  j["projectors"] = matrices_to_json(model.projectors);
  j["eigenvalue_table"] = model.eigenvalue_table;
  return j;
}

AbelianModel abelian_model_from_json(const json& j) {
  expect_kind(j, "abelian");
  AbelianModel model;
  model.dim = j.at("dim").get<std::size_t>();
  model.generators = matrices_from_json(j.at("generators"));
  model.projectors = matrices_from_json(j.at("projectors"));
  model.eigenvalue_table = j.at("eigenvalue_table").get<std::vector<std::vector<double>>>();
  if (model.eigenvalue_table.size() != model.projectors.size()) {
    throw InvalidArgument("abelian model: eigenvalue table and projectors disagree");
  }
  return model;
}

json to_json(const CodeSubspace& code) {
  json j = header("code_subspace");
  j["ambient_dim"] = code.ambient_dim;
  j["code_dim"] = code.code_dim;
  j["isometry"] = matrix_to_json(code.isometry);
  return j;
}

CodeSubspace code_subspace_from_json(const json& j) {
  expect_kind(j, "code_subspace");
  CodeSubspace code;
  code.ambient_dim = j.at("ambient_dim").get<std::size_t>();
  code.code_dim = j.at("code_dim").get<std::size_t>();
  code.isometry = matrix_from_json(j.at("isometry"));
  if (static_cast<std::size_t>(code.isometry.rows()) != code.ambient_dim ||
      static_cast<std::size_t>(code.isometry.cols()) != code.code_dim) {
    throw InvalidArgument("code subspace: isometry shape disagrees with dimensions");
  }
  return code;
}

json to_json(const SymmetrizingGroup& group) {
  json j = header("symmetrizing_group");
  j["order"] = group.order();
  j["closure_verified"] = group.closure_verified;
  j["tol"] = group.tol;
  j["closure_defect"] = std::isnan(group.closure_defect) ? json(nullptr) : json(group.closure_defect);
  j["elements"] = matrices_to_json(group.elements);
  return j;
}

SymmetrizingGroup symmetrizing_group_from_json(const json& j) {
  expect_kind(j, "symmetrizing_group");
  SymmetrizingGroup group;
  group.closure_verified = j.at("closure_verified").get<bool>();
  group.tol = j.at("tol").get<double>();
  group.closure_defect = j.at("closure_defect").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                          : j.at("closure_defect").get<double>();
  group.elements = matrices_from_json(j.at("elements"));
  if (group.elements.size() != j.at("order").get<std::size_t>()) {
    throw InvalidArgument("symmetrizing group: order disagrees with element count");
  }
  return group;
}

json to_json(const UniversalityReport& report) {
  json j = header("universality_report");
  j["closure_dim"] = report.closure_dim;
  j["required_dim"] = report.required_dim;
  j["verdict"] = report.verdict;
  j["generator_count_used"] = report.generator_count_used;
  return j;
}

UniversalityReport universality_report_from_json(const json& j) {
  expect_kind(j, "universality_report");
  UniversalityReport report;
  report.closure_dim = j.at("closure_dim").get<std::size_t>();
  report.required_dim = j.at("required_dim").get<std::size_t>();
  report.verdict = j.at("verdict").get<bool>();
  report.generator_count_used = j.at("generator_count_used").get<std::size_t>();
  return report;
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  out << doc.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  return json::parse(in);
}

}  // namespace dfs
