// Copyright 2026 The ringcav Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ringcav/hilbert.hpp"

using namespace ringcav;
using Catch::Matchers::WithinAbs;

TEST_CASE("angles are stored in lowest terms with a positive denominator", "[hilbert]") {
  const RationalAngle a(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  const RationalAngle b(1, -3);
  CHECK(b.numerator() == -1);
  CHECK(b.denominator() == 3);
  CHECK(RationalAngle(0, 5) == RationalAngle(0, 1));
  CHECK_THROWS_AS(RationalAngle(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(RationalAngle(3, 2), std::invalid_argument);
}

TEST_CASE("lattice geometry follows the smallest common momentum quantum", "[hilbert]") {
  struct Row {
    RationalAngle angle;
    double quantum;
    int plus, minus, bunching;
  };
  const Row rows[] = {
      {RationalAngle(0, 1), 1.0, 1, 1, 2},
      {RationalAngle(1, 2), 0.5, 1, 3, 4},
      {RationalAngle(-1, 2), 0.5, 3, 1, 4},
      {RationalAngle(1, 3), 2.0 / 3.0, 1, 2, 3},
      {RationalAngle(1, 1), 2.0, 0, 1, 1},
  };
  for (const auto& r : rows) {
    const auto spec = make_lattice(r.angle, 6, 1, 1);
    CAPTURE(r.angle.numerator(), r.angle.denominator());
    CHECK_THAT(spec.momentum_quantum(), WithinAbs(r.quantum, 1e-15));
    CHECK(spec.kick_plus() == r.plus);
    CHECK(spec.kick_minus() == r.minus);
    CHECK(spec.kick_bunching() == r.bunching);
    // Kicks reproduce the physical wavenumbers 1 -/+ sin phi and 2.
    CHECK_THAT(spec.kick_plus() * r.quantum, WithinAbs(1.0 - r.angle.sine(), 1e-14));
    CHECK_THAT(spec.kick_minus() * r.quantum, WithinAbs(1.0 + r.angle.sine(), 1e-14));
    CHECK_THAT(spec.kick_bunching() * r.quantum, WithinAbs(2.0, 1e-14));
    CHECK_THAT(spec.cell_length(), WithinAbs(2.0 * std::numbers::pi / r.quantum, 1e-12));
  }
  CHECK_THAT(make_lattice(RationalAngle(1, 2), 4, 0, 0).cell_length(),
             WithinAbs(4.0 * std::numbers::pi, 1e-12));
}

TEST_CASE("lattice rejects a momentum range narrower than one kick", "[hilbert]") {
  CHECK_THROWS_AS(make_lattice(RationalAngle(1, 2), 3, 2, 2), std::invalid_argument);
  CHECK_NOTHROW(make_lattice(RationalAngle(1, 2), 4, 2, 2));
  CHECK_THROWS_AS(make_lattice(RationalAngle(0, 1), 4, -1, 2), std::invalid_argument);
}

TEST_CASE("flatten and unflatten are inverse", "[hilbert]") {
  const Dims dims{7, 3, 4};
  for (Index f = 0; f < total_dimension(dims); ++f) {
    const auto idx = unflatten(f, dims);
    CHECK(flatten(idx, dims) == f);
  }
  const auto spec = make_lattice(RationalAngle(0, 1), 3, 2, 3);
  const auto idx = unflatten(spec.basis_index(-2, 1, 3), spec.dims());
  CHECK(spec.momentum_label(idx[0]) == -2);
  CHECK(idx[1] == 1);
  CHECK(idx[2] == 3);
}

TEST_CASE("ladder operators obey the truncated commutator", "[hilbert]") {
  const int c = 6;
  const DenseMatrix a = annihilation(c).dense();
  const DenseMatrix comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < c; ++n) CHECK_THAT(comm(n, n).real(), WithinAbs(1.0, 1e-14));
  CHECK_THAT(comm(c, c).real(), WithinAbs(-static_cast<double>(c), 1e-14));
  const DenseMatrix num = number_operator(c).dense();
  CHECK((a.adjoint() * a - num).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("momentum shift moves a label by the requested steps", "[hilbert]") {
  const auto spec = make_lattice(RationalAngle(0, 1), 4, 0, 0);
  const DenseMatrix s = momentum_shift(spec, 3).dense();
  for (int n = -4; n <= 4; ++n) {
    const int i = spec.atom_index(n);
    const int j = n + 3;
    if (j <= 4)
      CHECK(s(spec.atom_index(j), i) == cplx(1.0));
    else
      CHECK(s.col(i).cwiseAbs().sum() == 0.0);
  }
  CHECK_THROWS_AS(momentum_shift(spec, 9), std::invalid_argument);
}

TEST_CASE("tensor products match explicit Kronecker products", "[hilbert]") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto random_op = [&](int d) {
    DenseMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
    return Operator{{d}, m.sparseView()};
  };
  const Operator a = random_op(3), b = random_op(2), c = random_op(2);
  const Operator t = tensor({a, b, c});
  REQUIRE(t.dims == Dims{3, 2, 2});
  const DenseMatrix ad = a.dense(), bd = b.dense(), cd = c.dense(), td = t.dense();
  for (int i0 = 0; i0 < 3; ++i0)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j0 = 0; j0 < 3; ++j0)
          for (int j1 = 0; j1 < 2; ++j1)
            for (int j2 = 0; j2 < 2; ++j2) {
              const cplx want = ad(i0, j0) * bd(i1, j1) * cd(i2, j2);
              const cplx got = td(i0 * 4 + i1 * 2 + i2, j0 * 4 + j1 * 2 + j2);
              CHECK(std::abs(got - want) < 1e-13);
            }
}

TEST_CASE("coherent amplitudes are eigenvectors of the ladder operator", "[hilbert]") {
  const cplx alpha(0.7, -0.4);
  const int c = 30;
  const Eigen::VectorXcd v = coherent_amplitudes(alpha, c);
  CHECK_THAT(v.squaredNorm(), WithinAbs(1.0, 1e-14));
  const Eigen::VectorXcd av = annihilation(c).data * v;
  CHECK((av.head(c) - alpha * v.head(c)).cwiseAbs().maxCoeff() < 1e-14);
  const DensityState rho = pure_state({c + 1}, v);
  CHECK_THAT(rho.trace().real(), WithinAbs(v.squaredNorm(), 1e-14));
  CHECK(rho.hermiticity_error() < 1e-15);
  CHECK_THROWS_AS(pure_state({c}, v), std::invalid_argument);
}
