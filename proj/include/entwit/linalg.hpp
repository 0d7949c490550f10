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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entwit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Local dimensions of the parties, party 0 first. Party 0 is the most
/// significant digit of a computational-basis index.
using Dims = std::vector<int>;

/// Raised when an operation receives a matrix or vector of the wrong shape
/// or structure (non-Hermitian input, bad party index, ...).
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int total_dim(const Dims& dims);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

bool is_hermitian(const Matrix& a, double tol = 1e-10);

/// (a + a^dagger) / 2
Matrix hermitian_part(const Matrix& a);

/// Reorders the tensor factors: party i of the result is party order[i] of
/// the input.
Matrix permute_parties(const Matrix& a, const Dims& dims, const std::vector<int>& order);
Vector permute_parties(const Vector& v, const Dims& dims, const std::vector<int>& order);

/// Traces out every party not in `keep`. The kept parties retain their
/// relative order. Throws LinalgError on an empty or out-of-range set.
Matrix partial_trace(const Matrix& rho, const Dims& dims, std::vector<int> keep);

/// Transposes the tensor factors listed in `parties`.
Matrix partial_transpose(const Matrix& rho, const Dims& dims, const std::vector<int>& parties);

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius mass drops
/// below tol * max(1, ||a||_F).
EigenDecomposition hermitian_eig(const Matrix& a, double tol = 1e-12);

struct EigenPair {
  double value;
  Vector vector;
};

EigenPair min_eigpair(const Matrix& a);

/// Smallest eigenvalue only.
double min_eigenvalue(const Matrix& a);
double max_eigenvalue(const Matrix& a);

/// PSD up to eigensolver noise: min eigenvalue >= -1e-9 * max(trace, 1).
bool is_psd(const Matrix& a);

/// Builds V diag(f(lambda)) V^dagger from a decomposition.
template <typename F>
Matrix spectral_map(const EigenDecomposition& eig, F&& f) {
  Matrix out = Matrix::Zero(eig.vectors.rows(), eig.vectors.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double fi = f(eig.values[i]);
    if (fi != 0.0) out.noalias() += fi * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  return out;
}

/// Real coordinates of a Hermitian matrix in an orthonormal basis (with
/// respect to Re tr(AB)): diagonal entries, then sqrt(2)*Re and sqrt(2)*Im of
/// each strictly upper entry. Length dim^2.
RealVector hermitian_to_real(const Matrix& h);
Matrix real_to_hermitian(const RealVector& v, int dim);

}  // namespace entwit
