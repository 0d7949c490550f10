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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entwit/analysis.hpp"
#include "entwit/states.hpp"
#include "entwit/witness_solver.hpp"

namespace entwit {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// State mini-grammar: ghz:N, w:N, wghz:q, bell, maxmixed:2x2, product:2x2,
/// random:2x2[:rank[:seed]], randompure:2x2[:seed]; anything else is read as
/// a JSON state file.
DensityMatrix parse_state_source(const std::string& src);

/// "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_grid(const std::string& text);

struct SweepConfig {
  /// "wghz", or a JSON file {"a": state, "b": state} giving q a + (1 - q) b.
  std::string family = "wghz";
  /// Which side of the box the grid moves: "lower" sweeps the lower bound
  /// with the upper held at `fixed`; "upper" the converse.
  std::string release = "lower";
  double fixed = 1.0;
  std::vector<double> grid;
  std::vector<double> q_grid;
  int k = 1;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct SweepRow {
  double bound = 0.0;
  double q = 0.0;
  MeasureResult result;
};

/// Validates the config (nonempty monotone grids, q in [0, 1]) and throws
/// UsageError otherwise. Rows come back in grid order: bound-major, q-minor.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);

const std::vector<std::string>& verify_suites();
/// Throws UsageError for an unknown suite name.
std::vector<TheoremReport> run_verify_suite(const std::string& suite, std::uint64_t seed);

/// Entry point behind the `entwit` executable. Exit codes: 0 success (and
/// converged), 2 finished but only heuristically converged, 1 error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entwit
