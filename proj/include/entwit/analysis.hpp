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
#include <string>
#include <vector>

#include "entwit/states.hpp"
#include "entwit/witness_solver.hpp"

namespace entwit {

struct Residual {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;

  bool ok() const { return value <= threshold; }
};

/// Outcome of one executable check. `pass` holds iff every residual is at
/// or below its threshold; report-only checks carry no verdict.
struct TheoremReport {
  std::string name;
  bool has_verdict = true;
  bool pass = false;
  std::vector<Residual> residuals;
  std::vector<std::pair<std::string, double>> artifacts;

  void add_residual(std::string name, double value, double threshold);
  void add_artifact(std::string name, double value);
  void finalize();
  double artifact(const std::string& name) const;
};

/// Residual ||P W P + E P||_F with P the support projector of rho. A verdict
/// (residual <= tol) is only given when the block form is implied: rank-one
/// rho, or E equal to the largest value the box admits (the lower bound).
TheoremReport witness_support_form_check(const DensityMatrix& rho, const MeasureResult& result, double tol);

struct SchmidtCombo {
  TheoremReport report;
  cplx alpha;
  cplx beta;
  Vector combined;  // normalised alpha*psi + beta*phi, zero when degenerate
  int full_rank = 0;
  int combined_rank = 0;
  bool degenerate = false;
};

/// For two states of full Schmidt rank across a square bipartition, finds
/// (alpha, beta) with alpha*C + beta*D singular, C and D the coefficient
/// matrices, by taking beta = 1 and alpha = -mu for the best separated
/// eigenvalue mu of C^{-1} D.
SchmidtCombo schmidt_rank_deficient_combo(const Vector& psi, const Vector& phi, const Dims& dims,
                                          const Partition& bipartition);

/// max_{sigma in S_k} tr(rho sigma) >= tr(rho^2) / (1 + R^k(rho)), with slack 1e-4.
TheoremReport lemma1_check(const DensityMatrix& rho, int k, const SolverConfig& cfg = {});

enum class ScanMeasure { robustness, bsa, indicator };

enum class ScanExpectation {
  none,             // report only
  all_maximal,      // every sample within 0.01 of the largest
  not_all_maximal,  // some sample more than 0.01 below the largest
};

struct SubspaceScan {
  TheoremReport report;
  std::vector<double> values;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  Vector argmin;
};

/// Evaluates a pure-state measure on states of the support of rho: first the
/// eigenvectors, then Haar-random unit vectors of the support (sample i
/// depends only on (seed, i), so longer scans extend shorter ones).
/// `indicator` is 1 for entangled samples (k-separable overlap below
/// 1 - 1e-6) and 0 otherwise; for pure states it coincides with BSA.
SubspaceScan subspace_entanglement_scan(const DensityMatrix& rho, ScanMeasure measure, int k, int samples,
                                        std::uint64_t seed, ScanExpectation expect = ScanExpectation::none,
                                        const SolverConfig& cfg = {});

}  // namespace entwit
