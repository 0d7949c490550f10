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

#include <stdexcept>
#include <string>
#include <vector>

#include "entwit/partitions.hpp"
#include "entwit/sep_oracle.hpp"
#include "entwit/states.hpp"
#include "entwit/witness.hpp"

namespace entwit {

/// Optimal point of the cut-restricted problem
///
///   min tr(W rho)  s.t.  -lower*I <= W <= upper*I,  <phi_j|W|phi_j> >= 0,
///
/// together with its dual: multipliers x_j >= 0 and the slack duals
/// Z_lower, Z_upper >= 0 with Z_upper - Z_lower = sum_j x_j P_j - rho.
struct SubproblemResult {
  Matrix witness;
  RealVector multipliers;
  Matrix lower_dual;
  Matrix upper_dual;
  double objective = 0.0;        // tr(W rho)
  double primal_objective = 0.0; // lower*tr(Z_lower) + upper*tr(Z_upper); equals -objective at optimum
  int iterations = 0;
  bool optimal = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SubproblemResult best) : std::runtime_error(what), best_(std::move(best)) {}
  const SubproblemResult& best_iterate() const { return best_; }

 private:
  SubproblemResult best_;
};

/// Dense primal-dual interior point method (HKM direction with Mehrotra
/// predictor-corrector). Both bounds must be finite and positive.
SubproblemResult solve_witness_subproblem(const Matrix& rho, const std::vector<Vector>& cuts, double lower, double upper,
                                          double tol = 1e-6, int max_iter = 100);
SubproblemResult solve_witness_subproblem(const DensityMatrix& rho, const std::vector<ProductState>& cuts, double lower,
                                          double upper, double tol = 1e-6, int max_iter = 100);

struct SolverConfig {
  double tol = 1e-6;
  int max_iter = 500;
  OracleConfig oracle;
  /// Cuts whose multiplier stays below drop_threshold for drop_after
  /// consecutive iterations are removed from the master problem.
  double drop_threshold = 1e-12;
  int drop_after = 5;
  /// Start from the computational-basis product states.
  bool seed_basis_cuts = true;
  /// Record the master objective after every iteration.
  bool keep_history = true;
};

struct OracleStats {
  int calls = 0;
  double final_value = 0.0;
  int final_agreeing_restarts = 0;
  bool final_converged = false;
};

struct MeasureResult {
  std::string measure;
  int k = 1;
  double lower = kUnbounded;  // requested box, kUnbounded where released
  double upper = kUnbounded;
  double lower_cap = 0.0;     // box actually used by the master problem
  double upper_cap = 0.0;

  double value = 0.0;         // max(0, -tr(W rho)) for the reported witness
  Witness witness;
  std::vector<ProductState> primal_states;
  RealVector primal_weights;
  double primal_value = 0.0;  // objective of the separable decomposition (upper bound)
  double dual_value = 0.0;    // -tr(W' rho) for W shifted by the final oracle violation (lower bound)
  double gap = 0.0;           // primal_value - dual_value

  int iterations = 0;
  int cuts = 0;
  /// A released side still touched its cap after the last raise: the value
  /// is then only the (lower) value for the capped box.
  bool cap_active = false;
  bool converged = false;
  OracleStats oracle;
  std::vector<double> objective_history;  // master tr(W rho) per iteration

  /// BSA only: separable weight lambda = 1 - value.
  double separable_weight() const { return 1.0 - value; }
};

/// Witnessed entanglement with the box -lower*I <= W <= upper*I over
/// k-separable states, via cutting planes. Released (infinite) sides are
/// capped at 10*dim, and the cap is raised tenfold whenever the optimum
/// touches it.
MeasureResult compute_e_mn(const DensityMatrix& rho, int k, double lower, double upper, const SolverConfig& cfg = {});

/// Generalised robustness: upper bound 1, lower released.
MeasureResult robustness(const DensityMatrix& rho, int k, const SolverConfig& cfg = {});

/// Best separable approximation: lower bound 1, upper released.
MeasureResult bsa(const DensityMatrix& rho, int k, const SolverConfig& cfg = {});

/// Sum of the magnitudes of the negative eigenvalues of the partial transpose
/// on the second block.
double negativity(const DensityMatrix& rho, const Partition& bipartition);

}  // namespace entwit
