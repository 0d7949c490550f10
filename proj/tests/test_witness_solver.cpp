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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entwit/witness_solver.hpp"
#include "test_util.hpp"

using namespace entwit;

namespace {

const Dims kTwo{2, 2};
const Dims kThree{2, 2, 2};

Matrix proj(const Vector& v) { return v * v.adjoint(); }

Matrix primal_sigma(const MeasureResult& r, int d) {
  Matrix s = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < r.primal_states.size(); ++j)
    s += r.primal_weights[static_cast<Eigen::Index>(j)] * r.primal_states[j].projector();
  return s;
}

// Common postconditions of a finished solve.
void check_result(const DensityMatrix& rho, const MeasureResult& r, double tol = 1e-6) {
  const double trwr = (r.witness.op * rho.op()).trace().real();
  CHECK(r.value == doctest::Approx(std::max(0.0, -trwr)).epsilon(1e-8));
  CHECK(r.value >= 0.0);
  CHECK(r.gap >= -1e-7);
  CHECK(r.witness.in_box(1e-6));
  if (r.primal_weights.size() > 0) CHECK(r.primal_weights.minCoeff() >= 0.0);
  CHECK(r.dual_value <= r.value + 10 * tol);
}

}  // namespace

TEST_CASE("subproblem without cuts is the bare box") {
  auto s = solve_witness_subproblem(ghz(2).op(), {}, 1.0, 40.0, 1e-8);
  // The optimum is not unique (any W with tr(W rho) = -1 in the box).
  CHECK(s.objective == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK((s.witness.adjoint() - s.witness).norm() < 1e-10);
}

TEST_CASE("subproblem with a dense product grid approaches robustness of the Bell state") {
  const double pi = std::acos(-1.0);
  std::vector<Vector> cuts;
  std::vector<Vector> singles;
  for (int t = 0; t <= 6; ++t)
    for (int p = 0; p < 8; ++p) {
      Vector v(2);
      v << std::cos(t * pi / 12), std::polar(std::sin(t * pi / 12), p * pi / 4);
      singles.push_back(v);
      if (t == 0 || t == 6) break;
    }
  for (const auto& a : singles)
    for (const auto& b : singles) cuts.push_back(kron(a, b));
  auto s = solve_witness_subproblem(ghz(2).op(), cuts, 40.0, 1.0, 1e-7);
  // The finite grid relaxes the problem, so the optimum sits slightly below -1.
  CHECK(s.objective <= -1.0 + 1e-6);
  CHECK(s.objective >= -1.1);
  CHECK(s.multipliers.minCoeff() >= -1e-9);
  for (const auto& c : cuts) CHECK((c.adjoint() * s.witness * c)(0, 0).real() >= -1e-6);
}

TEST_CASE("separable state inside the cut cone is not detected") {
  std::vector<Vector> cuts{basis_vector(kTwo, {0, 0}), basis_vector(kTwo, {1, 1})};
  Matrix rho = 0.5 * (proj(cuts[0]) + proj(cuts[1]));
  auto s = solve_witness_subproblem(rho, cuts, 1.0, 40.0, 1e-7);
  CHECK(s.objective >= -1e-6);
}

TEST_CASE("subproblem validates its input and reports non-convergence") {
  CHECK_THROWS_AS(solve_witness_subproblem(ghz(2).op(), {}, kUnbounded, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_witness_subproblem(ghz(2).op(), {Vector::Ones(3)}, 1.0, 1.0), std::invalid_argument);
  try {
    solve_witness_subproblem(ghz(2).op(), {basis_vector(kTwo, {0, 0})}, 1.0, 40.0, 1e-10, 1);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.best_iterate().witness.rows() == 4);
  }
}

TEST_CASE("separable states have zero entanglement") {
  for (const auto& rho : {DensityMatrix::maximally_mixed(kTwo), DensityMatrix::maximally_mixed(kThree),
                          DensityMatrix::from_pure(kTwo, basis_vector(kTwo, {0, 1}))}) {
    auto r = robustness(rho, 1);
    CHECK(r.value < 1e-6);
    CHECK(r.converged);
    auto b = bsa(rho, 1);
    CHECK(b.value < 1e-6);
    CHECK(b.separable_weight() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("robustness of the Bell state") {
  auto r = robustness(ghz(2), 1);
  check_result(ghz(2), r);
  CHECK(r.measure == "robustness");
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.gap <= 1e-4);
  CHECK(r.converged);
  // Lower bound from the overlap inequality with the grid-computed overlap 1/2.
  const double overlap = -testutil::grid_min_two_qubit(-ghz(2).op());
  CHECK(r.value >= 1.0 / overlap * ghz(2).purity() - 1.0 - 1e-2);
  // Upper bound: Bell + Bell(-) is separable, so s = 1 is feasible.
  Vector minus(4);
  minus << 1, 0, 0, -1;
  minus /= std::sqrt(2.0);
  Matrix mix = 0.5 * (ghz(2).op() + proj(minus));
  CHECK((mix - 0.5 * (proj(basis_vector(kTwo, {0, 0})) + proj(basis_vector(kTwo, {1, 1})))).norm() < 1e-15);
  CHECK(r.value <= 1.0 + 1e-6);
}

TEST_CASE("robustness primal certificate") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    DensityMatrix rho = random_density(kTwo, 2, 500 + s);
    auto r = robustness(rho, 1);
    CAPTURE(s);
    check_result(rho, r);
    REQUIRE(r.converged);
    Matrix sigma = primal_sigma(r, 4);
    CHECK(min_eigenvalue(hermitian_part(sigma - rho.op())) >= -1e-7);
    CHECK(std::abs(r.primal_weights.sum() - 1.0 - r.value) <= 1e-4);
    CHECK(certify_witness(r.witness.op, kTwo, 1, {}, 1e-5));
  }
}

TEST_CASE("BSA primal certificate") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    DensityMatrix rho = random_density(kTwo, 4, 600 + s);
    auto r = bsa(rho, 1);
    CAPTURE(s);
    check_result(rho, r);
    Matrix sigma = primal_sigma(r, 4);
    CHECK(min_eigenvalue(hermitian_part(rho.op() - sigma)) >= -1e-7);
    CHECK(std::abs(r.primal_weights.sum() - r.separable_weight()) <= 1e-4);
  }
}

// A support holding product states lets W grow without bound on the kernel;
// the solve must end cleanly and flag the binding cap.
TEST_CASE("BSA with an unattained optimum is flagged") {
  for (std::uint64_t s = 0; s < 2; ++s) {
    DensityMatrix rho = random_density(kTwo, 3, 600 + s);
    auto r = bsa(rho, 1);
    CAPTURE(s);
    CHECK(r.value >= 0.0);
    CHECK(r.value <= 1.0 + 1e-6);
    CHECK(std::isfinite(r.dual_value));
    if (r.cap_active) CHECK_FALSE(r.converged);
  }
}

TEST_CASE("BSA of entangled pure states is one") {
  for (const auto& rho : {ghz(2), ghz(3), w_state(3), random_pure(kTwo, 3)}) {
    auto r = bsa(rho, 1);
    CHECK(r.measure == "bsa");
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.separable_weight() == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  }
}

TEST_CASE("small lower bound scales BSA") {
  auto r = compute_e_mn(ghz(2), 1, 0.01, 1.0);
  CHECK(r.measure == "e_mn");
  CHECK(r.value / 0.01 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("trivial boxes and k = m") {
  CHECK(compute_e_mn(ghz(2), 1, 0.0, 1.0).value == 0.0);
  CHECK(compute_e_mn(ghz(2), 1, 1.0, 0.0).value == 0.0);
  CHECK(robustness(ghz(3), 3).value == 0.0);
  CHECK_THROWS_AS(compute_e_mn(ghz(2), 1, kUnbounded, kUnbounded), std::invalid_argument);
  CHECK_THROWS_AS(compute_e_mn(ghz(2), 3, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_e_mn(ghz(2), 1, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("master objective is nondecreasing") {
  DensityMatrix rho = random_density(kThree, 2, 17);
  auto r = robustness(rho, 1);
  REQUIRE(r.objective_history.size() > 2);
  for (std::size_t i = 1; i < r.objective_history.size(); ++i)
    CHECK(r.objective_history[i] >= r.objective_history[i - 1] - 1e-5);
}

TEST_CASE("k-monotonicity") {
  for (const auto& rho : {ghz(3), w_state(3), random_density(kThree, 2, 8)}) {
    auto r1 = robustness(rho, 1), r2 = robustness(rho, 2);
    CHECK(r2.value <= r1.value + 1e-5);
    auto b1 = bsa(rho, 1), b2 = bsa(rho, 2);
    CHECK(b2.value <= b1.value + 1e-5);
  }
}

TEST_CASE("convexity") {
  DensityMatrix a = random_density(kTwo, 4, 1), b = random_density(kTwo, 1, 2);
  const double tol = 1e-6;
  const double ra = robustness(a, 1).value, rb = robustness(b, 1).value;
  const double ba = bsa(a, 1).value, bb = bsa(b, 1).value;
  for (double p : {0.25, 0.5, 0.75}) {
    DensityMatrix mix(kTwo, p * a.op() + (1 - p) * b.op());
    CHECK(robustness(mix, 1).value <= p * ra + (1 - p) * rb + 2 * tol);
    CHECK(bsa(mix, 1).value <= p * ba + (1 - p) * bb + 2 * tol);
  }
}

TEST_CASE("local unitary invariance") {
  for (const auto& rho : {random_density(kTwo, 4, 70), w_state(3)}) {
    DensityMatrix moved = apply_random_local_unitary(rho, 71);
    CHECK(robustness(moved, 1).value == doctest::Approx(robustness(rho, 1).value).epsilon(2e-6));
    CHECK(bsa(moved, 1).value == doctest::Approx(bsa(rho, 1).value).epsilon(2e-6));
  }
}

TEST_CASE("negativity") {
  const Partition cut = Partition::parse("1|2");
  CHECK(negativity(ghz(2), cut) == doctest::Approx(0.5));
  CHECK(negativity(DensityMatrix::maximally_mixed(kTwo), cut) == doctest::Approx(0.0));
  CHECK(negativity(wghz_family(0.0), Partition::parse("1|2,3")) == doctest::Approx(0.5));
  CHECK_THROWS(negativity(ghz(3), Partition::parse("1|2|3")));
}
