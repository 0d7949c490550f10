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

#pragma once

#include <string>

#include <json.hpp>

#include "entwit/analysis.hpp"
#include "entwit/states.hpp"
#include "entwit/witness_solver.hpp"

namespace entwit {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"re": [[...]], "im": [[...]]}
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"dims": [...], "re": [[...]], "im": [[...]]}. Doubles are written with
/// round-trip precision, so save/load is exact.
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

DensityMatrix load_state(const std::string& path);
void save_state(const DensityMatrix& rho, const std::string& path);

/// Bounds that were released are written as null.
json measure_result_to_json(const MeasureResult& r);
json report_to_json(const TheoremReport& r);

/// 9 significant digits, as used in sweep CSVs.
std::string format_sig9(double x);

}  // namespace entwit
