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

#include <Eigen/Eigenvalues>

#include "entwit/linalg.hpp"
#include "test_util.hpp"

using namespace entwit;
using testutil::random_hermitian;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

Vector ket(std::initializer_list<cplx> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

Vector bell() { return ket({1, 0, 0, 1}) / std::sqrt(2.0); }

}  // namespace

TEST_CASE("kron on identities, diagonals and kets") {
  CHECK(kron(Matrix(Matrix::Identity(2, 2)), Matrix(Matrix::Identity(2, 2))).isApprox(Matrix::Identity(4, 4)));
  CHECK(kron(diag({1, 0}), diag({0, 1})).isApprox(diag({0, 1, 0, 0})));
  Vector v = kron(ket({1, 0}), ket({0, 1}));
  CHECK((v - ket({0, 1, 0, 0})).norm() == doctest::Approx(0.0));
}

TEST_CASE("kron matches the index formula and multiplies traces") {
  Matrix a = random_hermitian(2, 1), b = random_hermitian(3, 2);
  Matrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(std::abs(k(3 * i + x, 3 * j + y) - a(i, j) * b(x, y)) < 1e-14);
  CHECK(std::abs(k.trace() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("partial trace examples") {
  Matrix b = bell() * bell().adjoint();
  CHECK(partial_trace(b, {2, 2}, {0}).isApprox(0.5 * Matrix::Identity(2, 2), 1e-14));
  Vector z = ket({1, 0, 0, 0});
  CHECK(partial_trace(z * z.adjoint(), {2, 2}, {1}).isApprox(diag({1, 0}), 1e-14));

  Vector g = Vector::Zero(8);
  g(0) = g(7) = 1 / std::sqrt(2.0);
  Matrix red = partial_trace(g * g.adjoint(), {2, 2, 2}, {0, 1});
  auto ev = hermitian_eig(red).values;
  CHECK(ev(2) == doctest::Approx(0.5));
  CHECK(ev(3) == doctest::Approx(0.5));
  CHECK(std::abs(ev(0)) < 1e-14);
}

TEST_CASE("partial trace agrees with explicit summation") {
  const Dims dims{2, 3, 2};
  Matrix rho = random_hermitian(12, 7);
  for (std::vector<int> keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    CAPTURE(keep.size());
    Matrix ours = partial_trace(rho, dims, keep);
    Matrix ref = testutil::naive_partial_trace(rho, dims, keep);
    CHECK((ours - ref).norm() < 1e-12);
  }
  Matrix r1 = random_hermitian(2, 3), r2 = random_hermitian(3, 4);
  r2 /= r2.trace().real();
  CHECK((partial_trace(kron(r1, r2), {2, 3}, {0}) - r1).norm() < 1e-12);
}

TEST_CASE("partial trace rejects bad keep sets") {
  Matrix rho = Matrix::Identity(4, 4);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {}), LinalgError);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {2}), LinalgError);
}

TEST_CASE("partial transpose") {
  Matrix b = bell() * bell().adjoint();
  auto ev = hermitian_eig(partial_transpose(b, {2, 2}, {1})).values;
  CHECK(ev(0) == doctest::Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.5));

  Matrix prod = kron(diag({0.3, 0.7}), diag({0.6, 0.4}));
  Matrix pt = partial_transpose(prod, {2, 2}, {0});
  CHECK(is_psd(pt));
  CHECK((hermitian_eig(pt).values - hermitian_eig(prod).values).norm() < 1e-14);

  Matrix r = random_hermitian(12, 11);
  Matrix once = partial_transpose(r, {3, 2, 2}, {0, 2});
  CHECK(is_hermitian(once));
  CHECK(std::abs(once.trace() - r.trace()) < 1e-12);
  CHECK((partial_transpose(once, {3, 2, 2}, {0, 2}) - r).norm() < 1e-14);
  CHECK_THROWS_AS(partial_transpose(r, {3, 2, 2}, {3}), LinalgError);
}

TEST_CASE("hermitian_eig textbook cases") {
  auto e = hermitian_eig(diag({3, 1, 2}));
  CHECK(e.values(0) == doctest::Approx(1));
  CHECK(e.values(1) == doctest::Approx(2));
  CHECK(e.values(2) == doctest::Approx(3));

  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  auto px = hermitian_eig(x);
  CHECK(px.values(0) == doctest::Approx(-1));
  CHECK(px.values(1) == doctest::Approx(1));
  Vector minus = ket({1, -1}) / std::sqrt(2.0);
  CHECK(std::abs(std::abs(minus.dot(px.vectors.col(0))) - 1.0) < 1e-12);
}

TEST_CASE("hermitian_eig agrees with a reference eigensolver") {
  for (int d : {1, 2, 3, 5, 8, 16, 27, 32}) {
    Matrix a = random_hermitian(d, 100 + d, 3.0);
    auto ours = hermitian_eig(a);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    CAPTURE(d);
    CHECK((ours.values - ref.eigenvalues()).norm() < 1e-10 * std::max(1.0, a.norm()));
    Matrix v = ours.vectors;
    CHECK((v.adjoint() * v - Matrix::Identity(d, d)).norm() < 1e-10);
    Matrix recon = v * ours.values.cast<cplx>().asDiagonal() * v.adjoint();
    CHECK((recon - a).norm() <= 1e-9 * a.norm());
    CHECK((a * v - v * ours.values.cast<cplx>().asDiagonal()).norm() < 1e-9 * a.norm());
  }
}

TEST_CASE("hermitian_eig handles degenerate spectra") {
  Matrix a = kron(diag({1, 1}), random_hermitian(3, 5));
  auto e = hermitian_eig(a);
  Matrix recon = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  CHECK((recon - a).norm() < 1e-10);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(a), LinalgError);
}

TEST_CASE("min_eigpair") {
  auto p = min_eigpair(diag({2, -1, 0}));
  CHECK(p.value == doctest::Approx(-1));
  CHECK(std::abs(std::abs(p.vector(1)) - 1.0) < 1e-12);

  Matrix nb = -bell() * bell().adjoint();
  auto q = min_eigpair(nb);
  CHECK(q.value == doctest::Approx(-1));
  CHECK(std::abs(std::abs(q.vector.dot(bell())) - 1.0) < 1e-12);

  Matrix r = random_hermitian(8, 21);
  auto m = min_eigpair(r);
  CHECK(std::abs(m.vector.norm() - 1.0) < 1e-12);
  CHECK((r * m.vector - m.value * m.vector).norm() < 1e-10);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Vector u = testutil::random_vector(8, rng);
    CHECK(m.value <= (u.adjoint() * r * u)(0, 0).real() + 1e-12);
  }
}

TEST_CASE("is_psd uses a scale-relative threshold") {
  CHECK(is_psd(diag({1, 0, 0})));
  CHECK(is_psd(diag({1, -1e-12})));
  CHECK_FALSE(is_psd(diag({1, -1e-6})));
}

TEST_CASE("permute_parties moves tensor factors") {
  Matrix a = random_hermitian(2, 1), b = random_hermitian(3, 2), c = random_hermitian(2, 3);
  Matrix abc = kron(kron(a, b), c);
  Matrix cab = kron(kron(c, a), b);
  CHECK((permute_parties(abc, {2, 3, 2}, {2, 0, 1}) - cab).norm() < 1e-12);
  std::mt19937_64 rng(1);
  Vector x = testutil::random_vector(2, rng), y = testutil::random_vector(3, rng);
  CHECK((permute_parties(kron(x, y), {2, 3}, {1, 0}) - kron(y, x)).norm() < 1e-14);
}

TEST_CASE("real Hermitian coordinates are an isometry") {
  Matrix a = random_hermitian(5, 9), b = random_hermitian(5, 10);
  RealVector va = hermitian_to_real(a), vb = hermitian_to_real(b);
  CHECK(va.size() == 25);
  CHECK(va.dot(vb) == doctest::Approx((a * b).trace().real()));
  CHECK((real_to_hermitian(va, 5) - a).norm() < 1e-13);
}
