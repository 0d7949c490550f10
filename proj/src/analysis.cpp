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

#include "entwit/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace entwit {

void TheoremReport::add_residual(std::string rname, double value, double threshold) {
  residuals.push_back({std::move(rname), value, threshold});
}

void TheoremReport::add_artifact(std::string aname, double value) { artifacts.emplace_back(std::move(aname), value); }

void TheoremReport::finalize() {
  if (!has_verdict) {
    pass = false;
    return;
  }
  pass = std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.ok(); });
}

double TheoremReport::artifact(const std::string& aname) const {
  for (const auto& [n, v] : artifacts)
    if (n == aname) return v;
  throw std::out_of_range("TheoremReport: no artifact named " + aname);
}

TheoremReport witness_support_form_check(const DensityMatrix& rho, const MeasureResult& result, double tol) {
  const Matrix& w = result.witness.op;
  if (w.rows() != rho.dim() || w.cols() != rho.dim())
    throw std::invalid_argument("witness_support_form_check: witness and state dimensions differ");

  TheoremReport rep;
  rep.name = "witness-form";
  const Matrix p = rho.support_projector(kRankTol);
  const double e = result.value;
  const double residual = (p * w * p + e * p).norm();
  const int rank = rho.rank(kRankTol);

  // The block form is forced for rank one, and for states attaining the
  // top of the box (tr(W rho) >= -lower for every feasible W).
  const bool at_box_max = std::isfinite(result.lower) && e >= result.lower - 10.0 * result.gap - 1e-6;
  rep.has_verdict = rank == 1 || at_box_max;
  rep.add_residual("support_residual", residual, tol);
  rep.add_artifact("value", e);
  rep.add_artifact("support_rank", rank);
  rep.add_artifact("gap", result.gap);
  rep.finalize();
  return rep;
}

namespace {

double sigma_min(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

SchmidtCombo schmidt_rank_deficient_combo(const Vector& psi, const Vector& phi, const Dims& dims,
                                          const Partition& bipartition) {
  if (bipartition.size() != 2) throw PartitionError("schmidt_rank_deficient_combo: need a bipartition");
  const Matrix c = coefficient_matrix(psi, dims, bipartition);
  const Matrix d = coefficient_matrix(phi, dims, bipartition);
  if (c.rows() != c.cols()) throw std::invalid_argument("schmidt_rank_deficient_combo: blocks differ in dimension");
  const int n = static_cast<int>(c.rows());
  const double cn = c.norm(), dn = d.norm();
  if (sigma_min(c) <= kRankTol * cn || sigma_min(d) <= kRankTol * dn)
    throw std::invalid_argument("schmidt_rank_deficient_combo: coefficient matrix is not invertible");

  SchmidtCombo out;
  out.full_rank = n;
  out.report.name = "schmidt";
  const cplx overlap = psi.dot(phi) / (psi.norm() * phi.norm());

  cplx mu;
  if (std::abs(std::abs(overlap) - 1.0) < 1e-12) {
    // phi = mu psi: every combination -mu psi + phi vanishes.
    out.degenerate = true;
    mu = psi.dot(phi) / psi.squaredNorm();
  } else {
    const Matrix k = c.partialPivLu().solve(d);
    Eigen::ComplexEigenSolver<Matrix> ces(k, false);
    const auto& ev = ces.eigenvalues();
    int best = 0;
    double best_sep = -1.0;
    for (int i = 0; i < n; ++i) {
      double sep = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (j != i) sep = std::min(sep, std::abs(ev(i) - ev(j)));
      if (sep > best_sep) {
        best_sep = sep;
        best = i;
      }
    }
    mu = ev(best);
    // A few rounds of generalised Rayleigh refinement on D x = mu C x.
    for (int it = 0; it < 3; ++it) {
      Eigen::JacobiSVD<Matrix> svd(d - mu * c, Eigen::ComputeFullV);
      const Vector x = svd.matrixV().col(n - 1);
      const Vector cx = c * x;
      mu = cx.dot(d * x) / cx.squaredNorm();
    }
  }

  const double scale = std::sqrt(std::norm(mu) + 1.0);
  out.alpha = -mu / scale;
  out.beta = 1.0 / scale;
  const Matrix combo = out.alpha * c + out.beta * d;
  const double det = std::abs(combo.determinant()) / (cn * dn);
  const double smin = sigma_min(combo);

  Vector v = out.alpha * psi + out.beta * phi;
  if (out.degenerate || v.norm() < 1e-12) {
    out.combined = Vector::Zero(psi.size());
    out.combined_rank = 0;
  } else {
    out.combined = v / v.norm();
    out.combined_rank = schmidt(out.combined, dims, bipartition).rank;
  }

  out.report.add_residual("det", det, 1e-9);
  out.report.add_residual("sigma_min", smin, 1e-8);
  out.report.add_residual("rank_excess", std::max(0, out.combined_rank - (n - 1)), 0.0);
  out.report.add_artifact("alpha_re", out.alpha.real());
  out.report.add_artifact("alpha_im", out.alpha.imag());
  out.report.add_artifact("beta_re", out.beta.real());
  out.report.add_artifact("beta_im", out.beta.imag());
  out.report.add_artifact("combined_rank", out.combined_rank);
  out.report.add_artifact("degenerate", out.degenerate ? 1.0 : 0.0);
  out.report.finalize();
  return out;
}

TheoremReport lemma1_check(const DensityMatrix& rho, int k, const SolverConfig& cfg) {
  TheoremReport rep;
  rep.name = "lemma1";
  const OverlapResult lhs = max_state_overlap(rho, k, cfg.oracle);
  const MeasureResult r = robustness(rho, k, cfg);
  const double rhs = rho.purity() / (1.0 + r.value);
  rep.add_residual("rhs_minus_lhs", rhs - lhs.value, 1e-4);
  rep.add_artifact("lhs", lhs.value);
  rep.add_artifact("rhs", rhs);
  rep.add_artifact("robustness", r.value);
  rep.add_artifact("robustness_gap", r.gap);
  rep.add_artifact("converged", (lhs.converged && r.converged) ? 1.0 : 0.0);
  rep.finalize();
  return rep;
}

namespace {

double pure_measure(const DensityMatrix& rho, ScanMeasure measure, int k, const SolverConfig& cfg) {
  switch (measure) {
    case ScanMeasure::robustness:
      return robustness(rho, k, cfg).value;
    case ScanMeasure::bsa:
      return bsa(rho, k, cfg).value;
    case ScanMeasure::indicator:
      return max_state_overlap(rho, k, cfg.oracle).value < 1.0 - 1e-6 ? 1.0 : 0.0;
  }
  return 0.0;
}

const char* measure_name(ScanMeasure m) {
  switch (m) {
    case ScanMeasure::robustness: return "robustness";
    case ScanMeasure::bsa: return "bsa";
    case ScanMeasure::indicator: return "indicator";
  }
  return "?";
}

}  // namespace

SubspaceScan subspace_entanglement_scan(const DensityMatrix& rho, ScanMeasure measure, int k, int samples,
                                        std::uint64_t seed, ScanExpectation expect, const SolverConfig& cfg) {
  if (samples < 1) throw std::invalid_argument("subspace_entanglement_scan: need at least one sample");
  const EigenDecomposition eig = hermitian_eig(rho.op());
  std::vector<int> support;
  for (int i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > kRankTol) support.push_back(i);
  const int r = static_cast<int>(support.size());
  Matrix basis(rho.dim(), r);
  for (int j = 0; j < r; ++j) basis.col(j) = eig.vectors.col(support[j]);

  SubspaceScan out;
  out.report.name = std::string("subspace-") + measure_name(measure);
  const int total = r == 1 ? 1 : samples;
  for (int i = 0; i < total; ++i) {
    Vector v;
    if (i < r) {
      v = basis.col(i);
    } else {
      std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(i)};
      Rng rng(ss);
      v = basis * random_unit_vector(r, rng);
      v.normalize();
    }
    const double val = pure_measure(DensityMatrix::from_pure(rho.dims(), v), measure, k, cfg);
    out.values.push_back(val);
    if (i == 0 || val < out.min) {
      out.min = val;
      out.argmin = v;
    }
    if (i == 0 || val > out.max) out.max = val;
    out.mean += val;
  }
  out.mean /= static_cast<double>(out.values.size());

  const double spread = out.max - out.min;
  switch (expect) {
    case ScanExpectation::none:
      out.report.has_verdict = false;
      out.report.add_residual("spread", spread, 0.0);
      break;
    case ScanExpectation::all_maximal:
      out.report.add_residual("spread", spread, 0.01);
      // BSA and the indicator top out at 1.
      if (measure != ScanMeasure::robustness) out.report.add_residual("one_minus_min", 1.0 - out.min, 0.01);
      break;
    case ScanExpectation::not_all_maximal:
      // Passes when some sample sits more than 0.01 below the largest.
      out.report.add_residual("neg_spread_margin", 0.01 - spread, 0.0);
      break;
  }
  out.report.add_artifact("samples", static_cast<double>(out.values.size()));
  out.report.add_artifact("support_rank", r);
  out.report.add_artifact("min", out.min);
  out.report.add_artifact("mean", out.mean);
  out.report.add_artifact("max", out.max);
  out.report.finalize();
  return out;
}

}  // namespace entwit
