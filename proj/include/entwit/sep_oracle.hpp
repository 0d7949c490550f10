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
#include <vector>

#include "entwit/linalg.hpp"
#include "entwit/partitions.hpp"
#include "entwit/states.hpp"
#include "entwit/witness.hpp"

namespace entwit {

/// Pure state that factorises across a partition: one normalised vector per
/// block, each living on the block's parties in ascending party order.
struct ProductState {
  Partition partition;
  Dims dims;
  std::vector<Vector> factors;

  /// The assembled state in the original party order.
  Vector full_vector() const;
  Matrix projector() const;
};

struct OracleConfig {
  /// 0 selects the default: 32 restarts up to dimension 16, 128 beyond.
  int restarts = 0;
  double inner_tol = 1e-10;
  int max_sweeps = 5000;
  std::uint64_t seed = 1;
};

int default_restarts(int dim);

struct OracleResult {
  double value = 0.0;  // <phi|W|phi> at the reported minimiser; upper bound on the true minimum
  ProductState minimizer;
  int restarts_used = 0;
  bool converged = false;
  /// Restarts whose final value agrees with the best within 10 * inner_tol.
  int agreeing_restarts = 0;
  /// Best minimiser of each partition searched, ascending by value.
  std::vector<ProductState> candidates;
  std::vector<double> candidate_values;
};

/// Alternating minimisation of <phi|W|phi> over states factorising across
/// `partition`, best of `cfg.restarts` starts. Restart 0 is seeded from the
/// principal vectors of the blocks' marginals of W's lowest eigenvector; the
/// rest are Haar random.
OracleResult min_product_expectation(const Matrix& w, const Dims& dims, const Partition& partition,
                                     const OracleConfig& cfg = {});
OracleResult min_product_expectation(const Witness& w, const Partition& partition, const OracleConfig& cfg = {});

/// Minimum over every partition of diameter <= k. Partitions that strictly
/// refine another candidate are skipped since their product states are a
/// subset of the coarser ones.
OracleResult min_over_k_separable(const Matrix& w, const Dims& dims, int k, const OracleConfig& cfg = {});
OracleResult min_over_k_separable(const Witness& w, int k, const OracleConfig& cfg = {});

struct OverlapResult {
  double value = 0.0;  // lower bound on max over k-separable sigma of tr(rho sigma)
  bool converged = false;
  ProductState maximizer;
};

OverlapResult max_state_overlap(const DensityMatrix& rho, int k, const OracleConfig& cfg = {});

/// Heuristic: true iff the oracle finds no k-separable state with
/// expectation below -tol.
bool certify_witness(const Matrix& w, const Dims& dims, int k, const OracleConfig& cfg = {}, double tol = 1e-6);
bool certify_witness(const Witness& w, int k, const OracleConfig& cfg = {}, double tol = 1e-6);

namespace detail {

/// Alternating descent from the given factors (block order, contiguous tensor
/// factors of `w_blocked`): each block in turn is replaced by the lowest
/// eigenvector of W contracted with the other blocks. Stops once a full sweep
/// lowers the value by less than inner_tol. Appends the value after every
/// block update to `trace` when non-null.
double alternating_descent(const Matrix& w_blocked, std::vector<Vector>& factors, double inner_tol, int max_sweeps,
                           std::vector<double>* trace = nullptr);

/// L-BFGS on the product of unit spheres with Armijo backtracking. Used to
/// cross the long flat valleys where block updates crawl.
double quasi_newton_descent(const Matrix& w_blocked, std::vector<Vector>& factors, double inner_tol, int max_iter,
                            std::vector<double>* trace = nullptr);

}  // namespace detail

}  // namespace entwit
