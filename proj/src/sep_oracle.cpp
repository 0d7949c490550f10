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

#include "entwit/sep_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entwit {

namespace {

std::vector<int> inverse_permutation(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
  return inv;
}

Dims reorder_dims(const Dims& dims, const std::vector<int>& order) {
  Dims out;
  for (int p : order) out.push_back(dims[p]);
  return out;
}

std::vector<int> block_dims_of(const Dims& dims, const Partition& partition) {
  std::vector<int> out;
  for (const auto& b : partition.blocks()) {
    int d = 1;
    for (int p : b) d *= dims[p];
    out.push_back(d);
  }
  return out;
}

Vector kron_all(const std::vector<Vector>& factors) {
  Vector v = Vector::Ones(1);
  for (const auto& f : factors) v = kron(v, f);
  return v;
}

// Columns: kron(f_0, ..., e_a, ..., f_{N-1}) for each basis vector e_a of block j.
Matrix embedding(const std::vector<Vector>& factors, std::size_t j) {
  Vector left = Vector::Ones(1), right = Vector::Ones(1);
  for (std::size_t i = 0; i < j; ++i) left = kron(left, factors[i]);
  for (std::size_t i = j + 1; i < factors.size(); ++i) right = kron(right, factors[i]);
  const Eigen::Index dj = factors[j].size();
  const Eigen::Index nl = left.size(), nr = right.size();
  Matrix t = Matrix::Zero(nl * dj * nr, dj);
  for (Eigen::Index l = 0; l < nl; ++l)
    for (Eigen::Index a = 0; a < dj; ++a)
      for (Eigen::Index r = 0; r < nr; ++r) t((l * dj + a) * nr + r, a) = left[l] * right[r];
  return t;
}

void check_dims(const Matrix& w, const Dims& dims, const Partition& partition) {
  if (w.rows() != total_dim(dims) || w.cols() != w.rows())
    throw LinalgError("oracle: operator dimension does not match party dimensions");
  if (partition.n_parties() != static_cast<int>(dims.size()))
    throw LinalgError("oracle: partition does not match the number of parties");
}

}  // namespace

Vector ProductState::full_vector() const {
  auto order = partition.block_order();
  return permute_parties(kron_all(factors), reorder_dims(dims, order), inverse_permutation(order));
}

Matrix ProductState::projector() const {
  Vector v = full_vector();
  return v * v.adjoint();
}

int default_restarts(int dim) { return dim <= 16 ? 32 : 128; }

namespace detail {

double alternating_descent(const Matrix& w_blocked, std::vector<Vector>& factors, double inner_tol, int max_sweeps,
                           std::vector<double>* trace) {
  Vector full = kron_all(factors);
  double value = full.dot(w_blocked * full).real();
  if (trace) trace->push_back(value);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double start = value;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      Matrix t = embedding(factors, j);
      Matrix eff = hermitian_part(t.adjoint() * w_blocked * t);
      auto pair = min_eigpair(eff);
      factors[j] = pair.vector;
      value = pair.value;
      if (trace) trace->push_back(value);
    }
    if (factors.size() == 1 || start - value < inner_tol) break;
  }
  return value;
}

namespace {

struct ProductPoint {
  double value;
  std::vector<Vector> grad;
};

// Value and Riemannian gradient 2 (M_j f_j - value f_j) at normalised factors.
ProductPoint evaluate(const Matrix& w, const std::vector<Vector>& factors) {
  Vector phi = kron_all(factors);
  Vector wphi = w * phi;
  ProductPoint pt{phi.dot(wphi).real(), {}};
  for (std::size_t j = 0; j < factors.size(); ++j) {
    Matrix t = embedding(factors, j);
    pt.grad.push_back(2.0 * (t.adjoint() * wphi - pt.value * factors[j]));
  }
  return pt;
}

double inner(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j].dot(b[j]).real();
  return s;
}

std::vector<Vector> axpy(const std::vector<Vector>& x, double alpha, const std::vector<Vector>& d) {
  std::vector<Vector> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + alpha * d[j];
  return out;
}

void normalize(std::vector<Vector>& f) {
  for (auto& v : f) v /= v.norm();
}

}  // namespace

double quasi_newton_descent(const Matrix& w_blocked, std::vector<Vector>& factors, double inner_tol, int max_iter,
                            std::vector<double>* trace) {
  constexpr int kMemory = 8;
  normalize(factors);
  ProductPoint pt = evaluate(w_blocked, factors);
  if (trace) trace->push_back(pt.value);
  std::vector<std::vector<Vector>> s_hist, y_hist;
  std::vector<double> rho_hist;
  int small_steps = 0;
  const double gtol = 1e-11 * std::max(1.0, w_blocked.cwiseAbs().maxCoeff());

  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(inner(pt.grad, pt.grad)) < gtol) break;
    // Two-loop recursion.
    std::vector<Vector> q = pt.grad;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * inner(s_hist[i], q);
      q = axpy(q, -alpha[i], y_hist[i]);
    }
    double h0 = 1.0;
    if (!s_hist.empty()) h0 = inner(s_hist.back(), y_hist.back()) / inner(y_hist.back(), y_hist.back());
    else h0 = 0.1 / std::max(1.0, std::sqrt(inner(pt.grad, pt.grad)));
    for (auto& v : q) v *= h0;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      double beta = rho_hist[i] * inner(y_hist[i], q);
      q = axpy(q, alpha[i] - beta, s_hist[i]);
    }
    std::vector<Vector> dir(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) dir[j] = -q[j];
    double slope = inner(pt.grad, dir);
    if (slope >= 0.0) {
      // Not a descent direction: restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = pt.grad;
      for (auto& v : dir) v *= -h0;
      slope = inner(pt.grad, dir);
    }

    // Backtracking Armijo line search; the objective is scale invariant so
    // trial points are renormalised.
    double step = 1.0;
    std::vector<Vector> trial;
    ProductPoint next;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      trial = axpy(factors, step, dir);
      normalize(trial);
      next = evaluate(w_blocked, trial);
      if (next.value <= pt.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<Vector> s(factors.size()), y(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
      s[j] = trial[j] - factors[j];
      y[j] = next.grad[j] - pt.grad[j];
    }
    const double sy = inner(s, y);
    if (sy > 1e-300) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kMemory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }
    const double decrease = pt.value - next.value;
    factors = std::move(trial);
    pt = std::move(next);
    if (trace) trace->push_back(pt.value);
    small_steps = decrease < 1e-3 * inner_tol ? small_steps + 1 : 0;
    if (small_steps >= 20) break;
  }
  return pt.value;
}

}  // namespace detail

namespace {

// A few block sweeps to reach a basin, a quasi-Newton run along its floor,
// then block sweeps again so every factor is exactly optimal given the rest.
double local_search(const Matrix& wb, std::vector<Vector>& factors, const OracleConfig& cfg) {
  double value = detail::alternating_descent(wb, factors, cfg.inner_tol, 20);
  if (factors.size() == 1) return value;
  detail::quasi_newton_descent(wb, factors, cfg.inner_tol, cfg.max_sweeps);
  return detail::alternating_descent(wb, factors, cfg.inner_tol, cfg.max_sweeps);
}

}  // namespace

OracleResult min_product_expectation(const Matrix& w, const Dims& dims, const Partition& partition,
                                     const OracleConfig& cfg) {
  check_dims(w, dims, partition);
  const auto order = partition.block_order();
  const Matrix wb = permute_parties(hermitian_part(w), dims, order);
  const auto bdims = block_dims_of(dims, partition);
  const int restarts = cfg.restarts > 0 ? cfg.restarts : default_restarts(static_cast<int>(w.rows()));

  // Warm start from the lowest eigenvector's block marginals.
  std::vector<Vector> warm;
  {
    Vector v = min_eigpair(wb).vector;
    Matrix proj = v * v.adjoint();
    Dims blocked_dims = reorder_dims(dims, order);
    int offset = 0;
    for (std::size_t j = 0; j < bdims.size(); ++j) {
      std::vector<int> keep(partition.blocks()[j].size());
      std::iota(keep.begin(), keep.end(), offset);
      offset += static_cast<int>(keep.size());
      Matrix marginal = partial_trace(proj, blocked_dims, keep);
      auto eig = hermitian_eig(marginal);
      warm.push_back(eig.vectors.col(eig.vectors.cols() - 1));
    }
  }

  std::vector<double> values(restarts);
  std::vector<std::vector<Vector>> finals(restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<Vector> factors;
    if (r == 0) {
      factors = warm;
    } else {
      std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(r)};
      Rng rng(seq);
      for (int d : bdims) factors.push_back(random_unit_vector(d, rng));
    }
    values[r] = local_search(wb, factors, cfg);
    finals[r] = std::move(factors);
  }

  // Combine by (value, restart index) so the outcome does not depend on
  // evaluation order.
  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (values[r] < values[best]) best = r;

  OracleResult out;
  out.minimizer = ProductState{partition, dims, finals[best]};
  out.value = out.minimizer.full_vector().dot(w * out.minimizer.full_vector()).real();
  out.restarts_used = restarts;
  const double agree_tol = 10.0 * cfg.inner_tol * std::max(1.0, std::abs(values[best]));
  out.agreeing_restarts =
      static_cast<int>(std::count_if(values.begin(), values.end(), [&](double v) { return v - values[best] <= agree_tol; }));
  out.converged = out.agreeing_restarts >= 2 || restarts == 1 || partition.size() == 1;
  out.candidates.push_back(out.minimizer);
  out.candidate_values.push_back(out.value);
  return out;
}

OracleResult min_product_expectation(const Witness& w, const Partition& partition, const OracleConfig& cfg) {
  return min_product_expectation(w.op, w.dims, partition, cfg);
}

OracleResult min_over_k_separable(const Matrix& w, const Dims& dims, int k, const OracleConfig& cfg) {
  const int m = static_cast<int>(dims.size());
  auto partitions = maximal_partitions(m, k);
  OracleResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, ProductState>> candidates;
  for (const auto& p : partitions) {
    auto r = min_product_expectation(w, dims, p, cfg);
    candidates.emplace_back(r.value, r.minimizer);
    if (r.value < best.value) {
      best.value = r.value;
      best.minimizer = r.minimizer;
      best.converged = r.converged;
      best.agreeing_restarts = r.agreeing_restarts;
    }
    best.restarts_used += r.restarts_used;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [v, s] : candidates) {
    best.candidate_values.push_back(v);
    best.candidates.push_back(std::move(s));
  }
  return best;
}

OracleResult min_over_k_separable(const Witness& w, int k, const OracleConfig& cfg) {
  return min_over_k_separable(w.op, w.dims, k, cfg);
}

OverlapResult max_state_overlap(const DensityMatrix& rho, int k, const OracleConfig& cfg) {
  auto r = min_over_k_separable(-rho.op(), rho.dims(), k, cfg);
  return {-r.value, r.converged, r.minimizer};
}

bool certify_witness(const Matrix& w, const Dims& dims, int k, const OracleConfig& cfg, double tol) {
  return min_over_k_separable(w, dims, k, cfg).value >= -tol;
}

bool certify_witness(const Witness& w, int k, const OracleConfig& cfg, double tol) {
  return certify_witness(w.op, w.dims, k, cfg, tol);
}

}  // namespace entwit
