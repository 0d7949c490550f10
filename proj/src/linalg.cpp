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

#include "entwit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entwit {

int total_dim(const Dims& dims) {
  int d = 1;
  for (int di : dims) {
    if (di < 1) throw LinalgError("local dimensions must be positive");
    d *= di;
  }
  return d;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

namespace {

void check_square(const Matrix& a, const Dims& dims) {
  int d = total_dim(dims);
  if (a.rows() != d || a.cols() != d)
    throw LinalgError("operator dimension " + std::to_string(a.rows()) +
                      " does not match party dimensions (" + std::to_string(d) + ")");
}

void check_order(const std::vector<int>& order, std::size_t n) {
  if (order.size() != n) throw LinalgError("permutation length mismatch");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i)) throw LinalgError("not a permutation of parties");
}

// old_index[new_linear] for a reordering of tensor factors.
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order) {
  const std::size_t n = dims.size();
  check_order(order, n);
  std::vector<int> old_stride(n, 1);
  for (int i = static_cast<int>(n) - 2; i >= 0; --i) old_stride[i] = old_stride[i + 1] * dims[i + 1];
  Dims new_dims(n);
  for (std::size_t i = 0; i < n; ++i) new_dims[i] = dims[order[i]];
  int d = total_dim(dims);
  std::vector<int> map(d);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < d; ++idx) {
    int old = 0;
    for (std::size_t i = 0; i < n; ++i) old += digit[i] * old_stride[order[i]];
    map[idx] = old;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (++digit[i] < new_dims[i]) break;
      digit[i] = 0;
    }
  }
  return map;
}

}  // namespace

Matrix permute_parties(const Matrix& a, const Dims& dims, const std::vector<int>& order) {
  check_square(a, dims);
  auto map = permutation_map(dims, order);
  const int d = static_cast<int>(map.size());
  Matrix out(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) out(r, c) = a(map[r], map[c]);
  return out;
}

Vector permute_parties(const Vector& v, const Dims& dims, const std::vector<int>& order) {
  if (v.size() != total_dim(dims)) throw LinalgError("vector dimension does not match parties");
  auto map = permutation_map(dims, order);
  Vector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = v[map[i]];
  return out;
}

Matrix partial_trace(const Matrix& rho, const Dims& dims, std::vector<int> keep) {
  check_square(rho, dims);
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) throw LinalgError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int p : keep)
    if (p < 0 || p >= n) throw LinalgError("partial_trace: party index out of range");

  std::vector<int> order = keep;
  int dk = 1;
  for (int p : keep) dk *= dims[p];
  for (int p = 0; p < n; ++p)
    if (!std::binary_search(keep.begin(), keep.end(), p)) order.push_back(p);
  const int dt = total_dim(dims) / dk;

  Matrix permuted = permute_parties(rho, dims, order);
  Matrix out = Matrix::Zero(dk, dk);
  for (int b = 0; b < dt; ++b)
    for (int j = 0; j < dk; ++j)
      for (int i = 0; i < dk; ++i) out(i, j) += permuted(i * dt + b, j * dt + b);
  return out;
}

Matrix partial_transpose(const Matrix& rho, const Dims& dims, const std::vector<int>& parties) {
  check_square(rho, dims);
  const int n = static_cast<int>(dims.size());
  std::vector<bool> flip(n, false);
  for (int p : parties) {
    if (p < 0 || p >= n) throw LinalgError("partial_transpose: party index out of range");
    flip[p] = true;
  }
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  const int d = total_dim(dims);
  Matrix out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      int r2 = r, c2 = c;
      for (int p = 0; p < n; ++p) {
        if (!flip[p]) continue;
        int dr = (r / stride[p]) % dims[p];
        int dc = (c / stride[p]) % dims[p];
        r2 += (dc - dr) * stride[p];
        c2 += (dr - dc) * stride[p];
      }
      out(r2, c2) = rho(r, c);
    }
  }
  return out;
}

EigenDecomposition hermitian_eig(const Matrix& input, double tol) {
  if (!is_hermitian(input, 1e-10)) throw LinalgError("hermitian_eig: input is not Hermitian");
  const Eigen::Index n = input.rows();
  Matrix a = hermitian_part(input);
  Matrix v = Matrix::Identity(n, n);
  const double threshold = tol * std::max(1.0, a.norm());

  auto off_mass = [&]() {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_mass() >= threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const cplx phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G restricted to (p, q) = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx gpp = c, gpq = s;
        const cplx gqp = -std::conj(phase) * s, gqq = std::conj(phase) * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = a(idx[i], idx[i]).real();
    out.vectors.col(i) = v.col(idx[i]);
  }
  return out;
}

EigenPair min_eigpair(const Matrix& a) {
  auto eig = hermitian_eig(a);
  return {eig.values[0], eig.vectors.col(0)};
}

double min_eigenvalue(const Matrix& a) { return hermitian_eig(a).values[0]; }

double max_eigenvalue(const Matrix& a) {
  auto eig = hermitian_eig(a);
  return eig.values[eig.values.size() - 1];
}

bool is_psd(const Matrix& a) {
  double tr = a.trace().real();
  return min_eigenvalue(a) >= -1e-9 * std::max(tr, 1.0);
}

RealVector hermitian_to_real(const Matrix& h) {
  const Eigen::Index d = h.rows();
  RealVector out(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) out[k++] = h(i, i).real();
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      out[k++] = r2 * h(i, j).real();
      out[k++] = r2 * h(i, j).imag();
    }
  return out;
}

Matrix real_to_hermitian(const RealVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw LinalgError("real_to_hermitian: coordinate length mismatch");
  Matrix h(dim, dim);
  Eigen::Index k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = v[k++];
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = cplx(s * v[k], s * v[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return h;
}

}  // namespace entwit
