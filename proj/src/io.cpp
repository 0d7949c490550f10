// Copyright 2026 The entwit Authors
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

#include "entwit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace entwit {

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw IoError("matrix JSON needs a 're' array");
  const json& re = j.at("re");
  const bool has_im = j.contains("im");
  if (!re.is_array()) throw IoError("matrix JSON: 're' must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows ? static_cast<Eigen::Index>(re.at(0).size()) : 0;
  Matrix m(rows, cols);
  try {
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (static_cast<Eigen::Index>(re.at(i).size()) != cols) throw IoError("matrix JSON: ragged rows");
      for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
        const double a = re.at(i).at(j2).get<double>();
        const double b = has_im ? j.at("im").at(i).at(j2).get<double>() : 0.0;
        m(i, j2) = cplx(a, b);
      }
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("matrix JSON: ") + e.what());
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  json j = matrix_to_json(rho.op());
  j["dims"] = rho.dims();
  return j;
}

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims")) throw IoError("state JSON needs 'dims'");
  Dims dims;
  try {
    dims = j.at("dims").get<Dims>();
  } catch (const json::exception& e) {
    throw IoError(std::string("state JSON: ") + e.what());
  }
  return DensityMatrix(std::move(dims), matrix_from_json(j));
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return state_from_json(j);
}

void save_state(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << state_to_json(rho).dump() << '\n';
}

namespace {

json bound(double b) { return std::isfinite(b) ? json(b) : json(nullptr); }

}  // namespace

json measure_result_to_json(const MeasureResult& r) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < r.primal_weights.size(); ++i) weights.push_back(r.primal_weights(i));
  return {{"measure", r.measure},
          {"k", r.k},
          {"m", bound(r.lower)},
          {"n", bound(r.upper)},
          {"value", r.value},
          {"gap", r.gap},
          {"primal_value", r.primal_value},
          {"dual_value", r.dual_value},
          {"converged", r.converged},
          {"cap_active", r.cap_active},
          {"iterations", r.iterations},
          {"cuts", r.cuts},
          {"witness", matrix_to_json(r.witness.op)},
          {"primal_weights", std::move(weights)}};
}

json report_to_json(const TheoremReport& r) {
  json res = json::object(), art = json::object();
  for (const auto& x : r.residuals) res[x.name] = {{"value", x.value}, {"threshold", x.threshold}};
  for (const auto& [n, v] : r.artifacts) art[n] = v;
  json j = {{"name", r.name}, {"residuals", std::move(res)}, {"artifacts", std::move(art)}};
  j["pass"] = r.has_verdict ? json(r.pass) : json(nullptr);
  return j;
}

std::string format_sig9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace entwit
