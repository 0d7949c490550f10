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

#include "entwit/states.hpp"

#include <cmath>

namespace entwit {

DensityMatrix::DensityMatrix(Dims dims, Matrix op) : dims_(std::move(dims)), op_(std::move(op)) {
  const int d = total_dim(dims_);
  if (op_.rows() != d || op_.cols() != d) throw StateError("density matrix dimension does not match party dimensions");
  if (!is_hermitian(op_, 1e-10)) throw StateError("density matrix is not Hermitian");
  op_ = hermitian_part(op_);
  if (std::abs(op_.trace().real() - 1.0) > 1e-10) throw StateError("density matrix trace is not 1");
  if (!is_psd(op_)) throw StateError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const Dims& dims, const Vector& psi) {
  double norm = psi.norm();
  if (norm == 0.0) throw StateError("zero vector is not a state");
  Vector v = psi / norm;
  return DensityMatrix(dims, v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
  int d = total_dim(dims);
  return DensityMatrix(dims, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (op_ * op_).trace().real(); }

int DensityMatrix::rank(double tol) const {
  auto eig = hermitian_eig(op_);
  return static_cast<int>((eig.values.array() > tol).count());
}

Matrix DensityMatrix::support_projector(double tol) const {
  return spectral_map(hermitian_eig(op_), [tol](double l) { return l > tol ? 1.0 : 0.0; });
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  Matrix reduced = partial_trace(rho.op(), rho.dims(), keep);
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Dims kept;
  for (int p : sorted) kept.push_back(rho.dims()[p]);
  // Renormalise away rounding so the trace check in the constructor holds.
  reduced /= reduced.trace().real();
  return DensityMatrix(kept, reduced);
}

namespace {

void check_bipartition(const Dims& dims, const Partition& p) {
  if (p.n_parties() != static_cast<int>(dims.size()) || p.size() != 2)
    throw StateError("expected a two-block partition covering all parties");
}

int block_dim(const Dims& dims, const Partition::Block& b) {
  int d = 1;
  for (int p : b) d *= dims[p];
  return d;
}

}  // namespace

Matrix coefficient_matrix(const Vector& psi, const Dims& dims, const Partition& bipartition) {
  check_bipartition(dims, bipartition);
  Vector permuted = permute_parties(psi, dims, bipartition.block_order());
  const int da = block_dim(dims, bipartition.blocks()[0]);
  const int db = block_dim(dims, bipartition.blocks()[1]);
  Matrix c(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) c(i, j) = permuted[i * db + j];
  return c;
}

Vector from_coefficient_matrix(const Matrix& c, const Dims& dims, const Partition& bipartition) {
  check_bipartition(dims, bipartition);
  auto order = bipartition.block_order();
  Dims permuted_dims;
  for (int p : order) permuted_dims.push_back(dims[p]);
  Vector permuted(c.size());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) permuted[i * c.cols() + j] = c(i, j);
  std::vector<int> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = static_cast<int>(i);
  return permute_parties(permuted, permuted_dims, inverse);
}

SchmidtData schmidt(const Vector& psi, const Dims& dims, const Partition& bipartition) {
  if (std::abs(psi.norm() - 1.0) > 1e-8) throw StateError("schmidt: state is not normalized");
  Matrix c = coefficient_matrix(psi, dims, bipartition);
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  out.rank = static_cast<int>((out.coefficients.array() > kRankTol).count());
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

double entropy_of_entanglement(const Vector& psi, const Dims& dims, const Partition& bipartition) {
  auto data = schmidt(psi, dims, bipartition);
  double h = 0.0;
  for (Eigen::Index i = 0; i < data.coefficients.size(); ++i) {
    double w = data.coefficients[i] * data.coefficients[i];
    if (w > 0.0) h -= w * std::log2(w);
  }
  return std::max(h, 0.0);
}

Vector ghz_vector(int n_parties) {
  if (n_parties < 2) throw StateError("GHZ state needs at least 2 parties");
  const int d = 1 << n_parties;
  Vector v = Vector::Zero(d);
  v[0] = v[d - 1] = 1.0 / std::sqrt(2.0);
  return v;
}

Vector w_vector(int n_parties) {
  if (n_parties < 2) throw StateError("W state needs at least 2 parties");
  const int d = 1 << n_parties;
  Vector v = Vector::Zero(d);
  for (int p = 0; p < n_parties; ++p) v[1 << p] = 1.0 / std::sqrt(static_cast<double>(n_parties));
  return v;
}

DensityMatrix ghz(int n_parties) { return DensityMatrix::from_pure(Dims(n_parties, 2), ghz_vector(n_parties)); }

DensityMatrix w_state(int n_parties) { return DensityMatrix::from_pure(Dims(n_parties, 2), w_vector(n_parties)); }

DensityMatrix wghz_family(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw StateError("wghz_family: q must lie in [0, 1]");
  Vector w = w_vector(3), g = ghz_vector(3);
  return DensityMatrix(Dims(3, 2), q * w * w.adjoint() + (1.0 - q) * g * g.adjoint());
}

Vector basis_vector(const Dims& dims, const std::vector<int>& digits) {
  if (digits.size() != dims.size()) throw StateError("basis_vector: digit count mismatch");
  int idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i]) throw StateError("basis_vector: digit out of range");
    idx = idx * dims[i] + digits[i];
  }
  Vector v = Vector::Zero(total_dim(dims));
  v[idx] = 1.0;
  return v;
}

Vector random_unit_vector(int dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

Matrix random_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  Matrix z(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) z(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Vector random_pure_vector(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_vector(total_dim(dims), rng);
}

DensityMatrix random_pure(const Dims& dims, std::uint64_t seed) {
  return DensityMatrix::from_pure(dims, random_pure_vector(dims, seed));
}

DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed) {
  const int d = total_dim(dims);
  if (rank < 1 || rank > d) throw StateError("random_density: rank must lie in [1, dim]");
  Rng rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = cplx(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho = hermitian_part(rho / rho.trace().real());
  return DensityMatrix(dims, rho);
}

DensityMatrix apply_random_local_unitary(const DensityMatrix& rho, std::uint64_t seed) {
  Rng rng(seed);
  Matrix u = Matrix::Identity(1, 1);
  for (int d : rho.dims()) u = kron(u, random_unitary(d, rng));
  Matrix out = hermitian_part(u * rho.op() * u.adjoint());
  out /= out.trace().real();
  return DensityMatrix(rho.dims(), out);
}

Matrix EnsembleSample::reconstruct() const {
  if (states.empty()) return Matrix();
  const auto d = states.front().size();
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) out += probabilities[i] * states[i] * states[i].adjoint();
  return out;
}

EnsembleSample random_ensemble(const DensityMatrix& rho, int size, std::uint64_t seed) {
  auto eig = hermitian_eig(rho.op());
  std::vector<Vector> weighted;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i)
    if (eig.values[i] > 1e-12) weighted.push_back(std::sqrt(eig.values[i]) * eig.vectors.col(i));
  const int r = static_cast<int>(weighted.size());
  if (size < r) throw StateError("random_ensemble: size must be at least rank(rho)");

  Rng rng(seed);
  Matrix u = random_unitary(size, rng);
  EnsembleSample out;
  out.probabilities = RealVector::Zero(size);
  for (int i = 0; i < size; ++i) {
    Vector v = Vector::Zero(rho.dim());
    for (int j = 0; j < r; ++j) v += u(i, j) * weighted[j];
    double p = v.squaredNorm();
    out.probabilities[i] = p;
    out.states.push_back(p > 0.0 ? Vector(v / std::sqrt(p)) : v);
  }
  return out;
}

}  // namespace entwit
