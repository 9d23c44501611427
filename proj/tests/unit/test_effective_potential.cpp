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

#include <Eigen/Eigenvalues>

#include "ringcav/effective_potential.hpp"
#include "ringcav/meanfield.hpp"

using namespace ringcav;
using Catch::Matchers::WithinAbs;

namespace {

const RationalAngle kHalf(1, 2);
const PhysicalParams kFig{12.0, -1.0, -10.0, 10.0, kHalf};

// Lowest eigenvalue of p^2 + 2 v0 cos(k q x) in a truncated plane-wave basis.
double plane_wave_ground_energy(double q, int k, double v0, int labels) {
  const int dim = 2 * labels + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double p = (i - labels) * q;
    h(i, i) = p * p;
    if (i + k < dim) h(i, i + k) = h(i + k, i) = v0;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

Eigen::VectorXd cosine_potential(const RationalAngle& angle, int n, int k, double v0) {
  const auto x = cell_grid(angle, n);
  const double q = CellGeometry::of(angle).momentum_quantum;
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v(j) = 2.0 * v0 * std::cos(k * q * x[j]);
  return v;
}

}  // namespace

TEST_CASE("free particle ground state is flat", "[potential]") {
  const auto gs = ground_state(Eigen::VectorXd::Zero(64), kHalf);
  CHECK_THAT(gs.energy, WithinAbs(0.0, 1e-12));
  CHECK(std::abs(gs.theta_plus) < 1e-12);
  CHECK(gs.method == "dense");
  const double dx = CellGeometry::of(kHalf).length / 64;
  CHECK_THAT(gs.psi.squaredNorm() * dx, WithinAbs(1.0, 1e-13));
  CHECK(gs.psi.imag().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gs.psi.real().minCoeff() > 0.0);
}

TEST_CASE("grid ground state matches a plane-wave Mathieu oracle", "[potential]") {
  for (int k : {1, 3, 4}) {
    for (double v0 : {-2.0, 6.0}) {
      CAPTURE(k, v0);
      const auto gs = ground_state(cosine_potential(kHalf, 128, k, v0), kHalf);
      CHECK_THAT(gs.energy, WithinAbs(plane_wave_ground_energy(0.5, k, v0, 60), 1e-9));
    }
  }
}

TEST_CASE("deep lattice energy is converged under 4x refinement", "[potential]") {
  const auto v = [](int n) { return build_v_quant(2.0, 1.0, 0.3, -0.8, kFig, n); };
  const auto coarse = ground_state(v(128), kHalf);
  const auto fine = ground_state(v(512), kHalf);
  CHECK_THAT(coarse.energy, WithinAbs(fine.energy, 1e-8));
  CHECK_THAT(std::abs(coarse.theta_plus), WithinAbs(std::abs(fine.theta_plus), 1e-8));
  // Deep wells localise the atom: strong order parameters.
  CHECK(std::abs(fine.theta_plus) > 0.5);
}

TEST_CASE("sparse inverse iteration takes over above the dense limit", "[potential]") {
  const auto v = [](int n) { return build_v_quant(1.0, 0.5, 0.0, 0.0, kFig, n); };
  const auto dense = ground_state(v(256), kHalf);
  const auto sparse = ground_state(v(2 * kDenseGroundStateLimit), kHalf);
  CHECK(dense.method == "dense");
  CHECK(sparse.method == "inverse-iteration");
  CHECK_THAT(sparse.energy, WithinAbs(dense.energy, 1e-9));
  // Grids differ by 4x, so Theta carries the residual discretisation error.
  CHECK_THAT(std::abs(sparse.theta_minus), WithinAbs(std::abs(dense.theta_minus), 1e-7));
}

TEST_CASE("imaginary-time relaxation reaches the same ground state", "[potential]") {
  const Eigen::VectorXd v = build_v_quant(0.6, 0.3, 1.0, 0.4, kFig, 128);
  const auto a = ground_state(v, kHalf);
  const auto b = imaginary_time_ground_state(v, kHalf);
  CHECK_THAT(b.energy, WithinAbs(a.energy, 1e-8));
  CHECK_THAT(grid_energy(v, kHalf, a.psi), WithinAbs(a.energy, 1e-10));
  const double dx = CellGeometry::of(kHalf).length / 128;
  const double overlap = std::abs(a.psi.dot(b.psi)) * dx;
  CHECK_THAT(overlap, WithinAbs(1.0, 1e-8));
}

TEST_CASE("order-parameter magnitudes do not depend on the field phases", "[potential]") {
  const int n = 256;
  const double d = CellGeometry::of(kHalf).momentum_quantum * CellGeometry::of(kHalf).length / n;
  const auto ref = ground_state(build_v_quant(1.2, 0.7, 0.4, -1.1, kFig, n), kHalf);
  for (int shift : {1, 17, 100}) {
    // Moving along the translation orbit: phi+ - (1-s)D, phi- + (1+s)D.
    const double delta = shift * d;
    const auto gs =
        ground_state(build_v_quant(1.2, 0.7, 0.4 - 1 * delta, -1.1 + 3 * delta, kFig, n), kHalf);
    CHECK_THAT(std::abs(gs.theta_plus), WithinAbs(std::abs(ref.theta_plus), 1e-10));
    CHECK_THAT(std::abs(gs.theta_minus), WithinAbs(std::abs(ref.theta_minus), 1e-10));
    CHECK_THAT(gs.energy, WithinAbs(ref.energy, 1e-10));
  }
}

TEST_CASE("effective potential inputs are checked", "[potential]") {
  CHECK_THROWS_AS(build_v_quant(-1.0, 0.0, 0.0, 0.0, kFig, 64), std::invalid_argument);
  CHECK_THROWS_AS(ground_state(Eigen::VectorXd::Zero(48), kHalf), std::invalid_argument);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(16);
  bad(3) = std::nan("");
  CHECK_THROWS_AS(ground_state(bad, kHalf), std::invalid_argument);
}
