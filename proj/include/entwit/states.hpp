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
#include <random>
#include <stdexcept>
#include <vector>

#include "entwit/linalg.hpp"
#include "entwit/partitions.hpp"

namespace entwit {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Trace-one positive semidefinite operator on the tensor product of the
/// parties' spaces. Validated on construction.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, Matrix op);

  static DensityMatrix from_pure(const Dims& dims, const Vector& psi);
  static DensityMatrix maximally_mixed(const Dims& dims);

  const Dims& dims() const { return dims_; }
  const Matrix& op() const { return op_; }
  int dim() const { return static_cast<int>(op_.rows()); }
  int n_parties() const { return static_cast<int>(dims_.size()); }

  double purity() const;
  /// Number of eigenvalues above `tol`.
  int rank(double tol = 1e-8) const;
  /// Projector onto the span of eigenvectors with eigenvalue above `tol`.
  Matrix support_projector(double tol = 1e-8) const;

 private:
  Dims dims_;
  Matrix op_;
};

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

constexpr double kRankTol = 1e-8;

struct SchmidtData {
  RealVector coefficients;  // nonincreasing
  int rank = 0;
  Matrix left;   // columns: Schmidt vectors on the first block
  Matrix right;  // columns: Schmidt vectors on the second block
};

/// Coefficient matrix of psi across a two-block partition: rows index the
/// first block, columns the second.
Matrix coefficient_matrix(const Vector& psi, const Dims& dims, const Partition& bipartition);
Vector from_coefficient_matrix(const Matrix& c, const Dims& dims, const Partition& bipartition);

SchmidtData schmidt(const Vector& psi, const Dims& dims, const Partition& bipartition);

/// Entropy of the Schmidt weights in bits.
double entropy_of_entanglement(const Vector& psi, const Dims& dims, const Partition& bipartition);

Vector ghz_vector(int n_parties);
Vector w_vector(int n_parties);
DensityMatrix ghz(int n_parties);
DensityMatrix w_state(int n_parties);

/// q |W3><W3| + (1 - q) |GHZ3><GHZ3|.
DensityMatrix wghz_family(double q);

/// Computational basis vector |digits>.
Vector basis_vector(const Dims& dims, const std::vector<int>& digits);

using Rng = std::mt19937_64;

Vector random_unit_vector(int dim, Rng& rng);
/// Haar unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(int dim, Rng& rng);

Vector random_pure_vector(const Dims& dims, std::uint64_t seed);
DensityMatrix random_pure(const Dims& dims, std::uint64_t seed);
/// G G^dagger / tr for a dim x rank Ginibre G.
DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed);

/// Applies U_1 (x) ... (x) U_m with independent Haar U_i.
DensityMatrix apply_random_local_unitary(const DensityMatrix& rho, std::uint64_t seed);

struct EnsembleSample {
  RealVector probabilities;
  std::vector<Vector> states;

  Matrix reconstruct() const;
};

/// An ensemble of `size` pure states for rho, obtained by mixing the
/// sqrt(eigenvalue)-weighted eigenvectors with a Haar unitary.
EnsembleSample random_ensemble(const DensityMatrix& rho, int size, std::uint64_t seed);

}  // namespace entwit
