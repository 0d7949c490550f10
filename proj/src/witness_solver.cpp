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

#include "entwit/witness_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entwit {

namespace {

// Column j of the Schur block for one Hermitian cone: coordinates of
// herm(X E_j S^{-1}) for the orthonormal Hermitian basis element E_j.
Eigen::MatrixXd schur_block(const Matrix& x, const Matrix& s_inv) {
  const Eigen::Index d = x.rows();
  Eigen::MatrixXd m(d * d, d * d);
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i_unit(0.0, 1.0);
  Eigen::Index col = 0;
  for (Eigen::Index a = 0; a < d; ++a) {
    Matrix g = x.col(a) * s_inv.row(a);
    m.col(col++) = hermitian_to_real(hermitian_part(g));
  }
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a + 1; b < d; ++b) {
      Matrix ab = x.col(a) * s_inv.row(b);
      Matrix ba = x.col(b) * s_inv.row(a);
      m.col(col++) = hermitian_to_real(hermitian_part(r * (ab + ba)));
      m.col(col++) = hermitian_to_real(hermitian_part(i_unit * r * (ab - ba)));
    }
  return m;
}

// Largest alpha with x + alpha * dx >= 0 (Hermitian x > 0).
double max_step(const Matrix& x, const Matrix& dx) {
  if (!dx.allFinite()) return 0.0;
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Matrix linv = llt.matrixL().solve(Matrix::Identity(x.rows(), x.cols()));
  double lmin = min_eigenvalue(hermitian_part(linv * dx * linv.adjoint()));
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step(const RealVector& x, const RealVector& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  return a;
}

Matrix inverse_hpd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    auto eig = hermitian_eig(a);
    return spectral_map(eig, [](double l) { return 1.0 / std::max(l, 1e-300); });
  }
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

double real_trace_product(const Matrix& a, const Matrix& b) { return (a.cwiseProduct(b.transpose())).sum().real(); }

}  // namespace

SubproblemResult solve_witness_subproblem(const Matrix& rho, const std::vector<Vector>& cuts, double lower,
                                          double upper, double tol, int max_iter) {
  if (!(lower > 0.0 && upper > 0.0) || !std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("solve_witness_subproblem: both box bounds must be finite and positive");
  const int d = static_cast<int>(rho.rows());
  const int p = d * d;
  const int nc = static_cast<int>(cuts.size());
  const double eps = std::min(1e-8, 1e-2 * tol);

  Eigen::MatrixXd a(p, nc);
  for (int j = 0; j < nc; ++j) {
    if (cuts[j].size() != d) throw std::invalid_argument("solve_witness_subproblem: cut dimension mismatch");
    Vector v = cuts[j] / cuts[j].norm();
    a.col(j) = hermitian_to_real(v * v.adjoint());
  }
  const RealVector b = -hermitian_to_real(hermitian_part(rho));
  const Matrix id = Matrix::Identity(d, d);
  const double c_norm = std::sqrt(static_cast<double>(d)) * (lower + upper);

  RealVector y = RealVector::Zero(p);
  Matrix x1 = id, x2 = id;
  Matrix s1 = (lower + 1.0) * id, s2 = (upper + 1.0) * id;
  RealVector x3 = RealVector::Ones(nc), s3 = RealVector::Ones(nc);
  const double n_cone = 2.0 * d + nc;

  SubproblemResult best;
  double best_score = std::numeric_limits<double>::infinity();
  int stalled = 0;

  auto snapshot = [&](int it, bool optimal) {
    SubproblemResult r;
    r.witness = real_to_hermitian(y, d);
    r.multipliers = x3;
    r.lower_dual = x1;
    r.upper_dual = x2;
    r.objective = real_trace_product(r.witness, rho);
    r.primal_objective = lower * x1.trace().real() + upper * x2.trace().real();
    r.iterations = it;
    r.optimal = optimal;
    return r;
  };

  for (int it = 0; it < max_iter; ++it) {
    const Matrix w = real_to_hermitian(y, d);
    const Matrix rd1 = lower * id + w - s1;
    const Matrix rd2 = upper * id - w - s2;
    const RealVector rd3 = a.transpose() * y - s3;
    const RealVector rp = b + hermitian_to_real(x1) - hermitian_to_real(x2) + a * x3;

    const double pobj = lower * x1.trace().real() + upper * x2.trace().real();
    const double dobj = b.dot(y);
    const double mu = (real_trace_product(x1, s1) + real_trace_product(x2, s2) + x3.dot(s3)) / n_cone;
    // Complementarity rather than pobj - dobj: the latter picks up primal
    // infeasibility times |W|, which is large once a released side is capped high.
    const double rel_gap = n_cone * mu / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = rp.norm() / (1.0 + b.norm());
    const double dinf = (rd1.norm() + rd2.norm() + rd3.norm()) / (1.0 + c_norm);

    const double score = std::max({rel_gap, pinf, dinf});
    if (!std::isfinite(score)) break;
    if (score < best_score) {
      best_score = score;
      best = snapshot(it, false);
      stalled = 0;
    } else if (++stalled >= 5) {
      break;
    }
    if (score < eps) return snapshot(it, true);

    const Matrix s1_inv = inverse_hpd(s1), s2_inv = inverse_hpd(s2);
    Eigen::MatrixXd schur = schur_block(x1, s1_inv) + schur_block(x2, s2_inv);
    if (nc > 0) schur.noalias() += a * (x3.array() / s3.array()).matrix().asDiagonal() * a.transpose();
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> chol(schur);
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    const bool use_llt = chol.info() == Eigen::Success;
    if (!use_llt) ldlt.compute(schur);

    struct Direction {
      Matrix dx1, dx2, ds1, ds2;
      RealVector dx3, ds3;
      RealVector dy;
    };

    // q1 = Rc1 S1^{-1}, q2 = Rc2 S2^{-1}, q3 = rc3 / s3.
    auto solve = [&](const Matrix& q1, const Matrix& q2, const RealVector& q3) {
      Matrix g1 = hermitian_part(q1 - x1 * rd1 * s1_inv);
      Matrix g2 = hermitian_part(q2 - x2 * rd2 * s2_inv);
      RealVector g3 = q3 - (x3.array() * rd3.array() / s3.array()).matrix();
      RealVector rhs = rp - (-hermitian_to_real(g1) + hermitian_to_real(g2) - a * g3);
      Direction dir;
      dir.dy = use_llt ? RealVector(chol.solve(rhs)) : RealVector(ldlt.solve(rhs));
      const Matrix dw = real_to_hermitian(dir.dy, d);
      dir.ds1 = rd1 + dw;
      dir.ds2 = rd2 - dw;
      dir.ds3 = rd3 + a.transpose() * dir.dy;
      dir.dx1 = hermitian_part(q1 - x1 * dir.ds1 * s1_inv);
      dir.dx2 = hermitian_part(q2 - x2 * dir.ds2 * s2_inv);
      dir.dx3 = q3 - (x3.array() * dir.ds3.array() / s3.array()).matrix();
      return dir;
    };

    auto steps = [&](const Direction& dir) {
      double ap = std::min({max_step(x1, dir.dx1), max_step(x2, dir.dx2), max_step(x3, dir.dx3)});
      double ad = std::min({max_step(s1, dir.ds1), max_step(s2, dir.ds2), max_step(s3, dir.ds3)});
      return std::pair{ap, ad};
    };

    // Predictor.
    Direction aff = solve(-x1, -x2, -x3);
    if (!aff.dy.allFinite()) break;
    auto [ap_aff, ad_aff] = steps(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    const double mu_aff = (real_trace_product(x1 + ap_aff * aff.dx1, s1 + ad_aff * aff.ds1) +
                           real_trace_product(x2 + ap_aff * aff.dx2, s2 + ad_aff * aff.ds2) +
                           (x3 + ap_aff * aff.dx3).dot(s3 + ad_aff * aff.ds3)) /
                          n_cone;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    const Matrix q1 = sigma * mu * s1_inv - x1 - aff.dx1 * aff.ds1 * s1_inv;
    const Matrix q2 = sigma * mu * s2_inv - x2 - aff.dx2 * aff.ds2 * s2_inv;
    const RealVector q3 =
        (sigma * mu / s3.array() - x3.array() - aff.dx3.array() * aff.ds3.array() / s3.array()).matrix();
    Direction dir = solve(q1, q2, q3);
    if (!dir.dy.allFinite() || !dir.dx1.allFinite() || !dir.dx2.allFinite()) break;
    auto [ap, ad] = steps(dir);
    const double gamma = 0.95;
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);

    x1 = hermitian_part(x1 + ap * dir.dx1);
    x2 = hermitian_part(x2 + ap * dir.dx2);
    x3 += ap * dir.dx3;
    y += ad * dir.dy;
    s1 = hermitian_part(s1 + ad * dir.ds1);
    s2 = hermitian_part(s2 + ad * dir.ds2);
    s3 += ad * dir.ds3;
  }

  // Near the optimum the Newton systems lose accuracy before the residuals
  // reach eps; accept the best iterate if it is still close.
  if (best_score < 1e2 * eps) {
    best.optimal = true;
    return best;
  }
  throw SolverError("witness subproblem did not converge (residual " + std::to_string(best_score) + ")", best);
}

SubproblemResult solve_witness_subproblem(const DensityMatrix& rho, const std::vector<ProductState>& cuts, double lower,
                                          double upper, double tol, int max_iter) {
  std::vector<Vector> vectors;
  vectors.reserve(cuts.size());
  for (const auto& c : cuts) vectors.push_back(c.full_vector());
  return solve_witness_subproblem(rho.op(), vectors, lower, upper, tol, max_iter);
}

namespace {

std::vector<ProductState> basis_cuts(const Dims& dims) {
  std::vector<ProductState> out;
  const int m = static_cast<int>(dims.size());
  const Partition finest = Partition::finest(m);
  std::vector<int> digits(m, 0);
  const int d = total_dim(dims);
  for (int idx = 0; idx < d; ++idx) {
    ProductState ps{finest, dims, {}};
    for (int p = 0; p < m; ++p) {
      Vector f = Vector::Zero(dims[p]);
      f[digits[p]] = 1.0;
      ps.factors.push_back(f);
    }
    out.push_back(std::move(ps));
    for (int p = m - 1; p >= 0; --p) {
      if (++digits[p] < dims[p]) break;
      digits[p] = 0;
    }
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Largest t in [0, 1] with rho - t * sigma >= 0.
double largest_dominated_scale(const Matrix& rho, const Matrix& sigma) {
  auto ok = [&](double t) { return min_eigenvalue(hermitian_part(rho - t * sigma)) >= -1e-12; };
  if (ok(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

void finalize_primal(MeasureResult& res, const DensityMatrix& rho, std::vector<ProductState> states, RealVector weights) {
  const int d = rho.dim();
  Matrix sigma = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < states.size(); ++j)
    if (weights[j] > 0.0) sigma += weights[j] * states[j].projector();
    else weights[j] = 0.0;
  sigma = hermitian_part(sigma);

  if (res.lower == kUnbounded) {
    // sigma - rho must be PSD: pad with delta * I, itself a sum of basis product states.
    double delta = std::max(0.0, -min_eigenvalue(hermitian_part(sigma - rho.op())));
    if (delta > 0.0) {
      auto basis = basis_cuts(rho.dims());
      const auto n_old = weights.size();
      weights.conservativeResize(static_cast<Eigen::Index>(n_old + basis.size()));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        weights[static_cast<Eigen::Index>(n_old + i)] = delta;
        states.push_back(std::move(basis[i]));
      }
      sigma += delta * Matrix::Identity(d, d);
    }
    res.primal_value = res.upper * std::max(0.0, sigma.trace().real() - 1.0);
  } else if (res.upper == kUnbounded) {
    double t = largest_dominated_scale(rho.op(), sigma);
    weights *= t;
    sigma *= t;
    res.primal_value = res.lower * std::max(0.0, 1.0 - sigma.trace().real());
  } else {
    auto eig = hermitian_eig(hermitian_part(sigma - rho.op()));
    double pos = 0.0, neg = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) (eig.values[i] > 0 ? pos : neg) += std::abs(eig.values[i]);
    res.primal_value = res.upper * pos + res.lower * neg;
  }
  res.primal_states = std::move(states);
  res.primal_weights = std::move(weights);
}

MeasureResult trivial_result(const DensityMatrix& rho, int k, double lower, double upper, std::string measure) {
  MeasureResult res;
  res.measure = std::move(measure);
  res.k = k;
  res.lower = lower;
  res.upper = upper;
  res.witness = Witness{Matrix::Zero(rho.dim(), rho.dim()), rho.dims(), k, lower, upper};
  res.primal_weights = RealVector();
  res.converged = true;
  return res;
}

}  // namespace

MeasureResult compute_e_mn(const DensityMatrix& rho, int k, double lower, double upper, const SolverConfig& cfg) {
  const int m = rho.n_parties();
  if (k < 1 || k > m) throw std::invalid_argument("compute_e_mn: k must lie in [1, number of parties]");
  if (lower < 0.0 || upper < 0.0 || std::isnan(lower) || std::isnan(upper))
    throw std::invalid_argument("compute_e_mn: box bounds must be nonnegative");
  if (lower == kUnbounded && upper == kUnbounded)
    throw std::invalid_argument("compute_e_mn: at most one side of the box may be released");

  const std::string name = lower == kUnbounded && upper == 1.0   ? "robustness"
                           : upper == kUnbounded && lower == 1.0 ? "bsa"
                                                                 : "e_mn";
  const int d = rho.dim();

  // A zero-width side forces W >= 0 or W <= 0, and k = m makes every state
  // separable; either way nothing is detected.
  if (lower == 0.0 || upper == 0.0 || k == m) {
    MeasureResult res = trivial_result(rho, k, lower, upper, name);
    res.lower_cap = lower;
    res.upper_cap = upper;
    return res;
  }

  OracleConfig ocfg = cfg.oracle;
  int oracle_calls = 0;

  // A pure product state sits in the cut cone, so tr(W rho) >= 0 for every witness.
  if (rho.rank() == 1) {
    ocfg.seed = mix_seed(cfg.oracle.seed, 0);
    auto overlap = max_state_overlap(rho, k, ocfg);
    ++oracle_calls;
    if (overlap.value >= 1.0 - cfg.tol) {
      MeasureResult res = trivial_result(rho, k, lower, upper, name);
      res.lower_cap = lower;
      res.upper_cap = upper;
      res.primal_states = {overlap.maximizer};
      res.primal_weights = RealVector::Ones(1);
      res.oracle.calls = oracle_calls;
      res.oracle.final_converged = overlap.converged;
      res.converged = overlap.converged;
      res.cuts = 1;
      return res;
    }
  }

  const double default_cap = 10.0 * d;
  double lo_cap = lower == kUnbounded ? default_cap : lower;
  double up_cap = upper == kUnbounded ? default_cap : upper;

  std::vector<ProductState> cuts;
  std::vector<int> idle;
  if (cfg.seed_basis_cuts) cuts = basis_cuts(rho.dims());
  idle.assign(cuts.size(), 0);

  MeasureResult res;
  res.measure = name;
  res.k = k;
  res.lower = lower;
  res.upper = upper;

  SubproblemResult sub;
  OracleResult last_oracle;
  bool finished = false;
  int cap_raises = 0;
  constexpr int kMaxCapRaises = 3;
  bool just_raised = false, cap_active = false;
  double prev_lo = lo_cap, prev_up = up_cap;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    bool stalled = false;
    try {
      sub = solve_witness_subproblem(rho, cuts, lo_cap, up_cap, cfg.tol);
    } catch (const SolverError& e) {
      if (just_raised) {
        // The larger box is numerically out of reach; go back and stop raising.
        lo_cap = prev_lo;
        up_cap = prev_up;
        cap_raises = kMaxCapRaises;
        just_raised = false;
        --it;
        continue;
      }
      if (e.best_iterate().witness.size() == 0) throw;
      // Keep the best iterate; the result is reported as not converged.
      sub = e.best_iterate();
      stalled = true;
    }
    just_raised = false;
    auto eig = hermitian_eig(sub.witness);
    const bool lower_hit = lower == kUnbounded && eig.values[0] <= -0.99 * lo_cap;
    const bool upper_hit = upper == kUnbounded && eig.values[d - 1] >= 0.99 * up_cap;
    cap_active = lower_hit || upper_hit;
    if (cap_active && cap_raises < kMaxCapRaises) {
      prev_lo = lo_cap;
      prev_up = up_cap;
      if (lower_hit) lo_cap *= 10.0;
      if (upper_hit) up_cap *= 10.0;
      ++cap_raises;
      just_raised = true;
      --it;
      continue;
    }
    if (cfg.keep_history) res.objective_history.push_back(sub.objective);

    ocfg.seed = mix_seed(cfg.oracle.seed, static_cast<std::uint64_t>(it) + 1);
    last_oracle = min_over_k_separable(sub.witness, rho.dims(), k, ocfg);
    ++oracle_calls;
    if (last_oracle.value >= -cfg.tol) {
      finished = !stalled;
      break;
    }
    if (stalled) break;

    // Retire cuts that have carried no weight for a while.
    std::vector<ProductState> kept;
    std::vector<int> kept_idle;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      int count = sub.multipliers[static_cast<Eigen::Index>(j)] < cfg.drop_threshold ? idle[j] + 1 : 0;
      if (count < cfg.drop_after) {
        kept.push_back(std::move(cuts[j]));
        kept_idle.push_back(count);
      }
    }
    cuts = std::move(kept);
    idle = std::move(kept_idle);
    for (std::size_t c = 0; c < last_oracle.candidates.size(); ++c) {
      if (last_oracle.candidate_values[c] < -cfg.tol) {
        cuts.push_back(last_oracle.candidates[c]);
        idle.push_back(0);
      }
    }
  }

  res.lower_cap = lo_cap;
  res.upper_cap = up_cap;
  res.iterations = finished ? it + 1 : it;
  res.cuts = static_cast<int>(cuts.size());
  res.witness = Witness{sub.witness, rho.dims(), k, lower, upper};
  const double trace_wr = real_trace_product(sub.witness, rho.op());
  res.value = std::max(0.0, -trace_wr);

  // Certified lower bound: shift by the remaining violation, rescale into the box.
  const double violation = std::max(0.0, -last_oracle.value);
  double scale = 1.0;
  if (upper != kUnbounded) {
    const double top = max_eigenvalue(sub.witness) + violation;
    if (top > upper) scale = upper / top;
  }
  res.dual_value = std::max(0.0, -scale * (trace_wr + violation));

  finalize_primal(res, rho, cuts, sub.multipliers);
  res.gap = res.primal_value - res.dual_value;

  res.oracle.calls = oracle_calls;
  res.oracle.final_value = last_oracle.value;
  res.oracle.final_agreeing_restarts = last_oracle.agreeing_restarts;
  res.oracle.final_converged = last_oracle.converged;
  res.cap_active = cap_active;
  res.converged = finished && last_oracle.converged && !cap_active;
  return res;
}

MeasureResult robustness(const DensityMatrix& rho, int k, const SolverConfig& cfg) {
  return compute_e_mn(rho, k, kUnbounded, 1.0, cfg);
}

MeasureResult bsa(const DensityMatrix& rho, int k, const SolverConfig& cfg) {
  return compute_e_mn(rho, k, 1.0, kUnbounded, cfg);
}

double negativity(const DensityMatrix& rho, const Partition& bipartition) {
  if (bipartition.size() != 2 || bipartition.n_parties() != rho.n_parties())
    throw std::invalid_argument("negativity: expected a two-block partition covering all parties");
  auto eig = hermitian_eig(partial_transpose(rho.op(), rho.dims(), bipartition.blocks()[1]));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] < 0.0) neg -= eig.values[i];
  return neg;
}

}  // namespace entwit
