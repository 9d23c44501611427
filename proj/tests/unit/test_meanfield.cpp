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

#include "ringcav/meanfield.hpp"

using namespace ringcav;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const RationalAngle kHalf(1, 2);
const PhysicalParams kFig{12.0, -1.0, -10.0, 10.0, kHalf};

// A modulated state with live fields so every term of the step contributes.
MeanFieldState busy_state(int n) {
  MeanFieldState s = make_meanfield_state(kHalf, n, cplx(0.3, 0.2), cplx(-0.1, 0.25));
  const auto x = cell_grid(kHalf, n);
  for (int j = 0; j < n; ++j)
    s.psi(j) *= cplx(1.0 + 0.3 * std::cos(0.5 * x[j]), 0.2 * std::sin(1.5 * x[j]));
  s.psi /= std::sqrt(s.norm());
  return s;
}

double state_distance(const MeanFieldState& a, const MeanFieldState& b) {
  return std::max({(a.psi - b.psi).cwiseAbs().maxCoeff(), std::abs(a.alpha_plus - b.alpha_plus),
                   std::abs(a.alpha_minus - b.alpha_minus)});
}

MeanFieldState run(MeanFieldState s, double dt, double t) {
  MeanFieldPropagator prop(kFig, s.grid_points(), dt);
  const long steps = std::lround(t / dt);
  for (long i = 0; i < steps; ++i) prop.step(s);
  return s;
}

}  // namespace

TEST_CASE("cell geometry for the standard angles", "[meanfield]") {
  const auto g = CellGeometry::of(kHalf);
  CHECK(g.kick_plus == 1);
  CHECK(g.kick_minus == 3);
  CHECK(g.kick_bunching == 4);
  CHECK_THAT(g.length, WithinAbs(4.0 * std::numbers::pi, 1e-14));
  CHECK_THAT(CellGeometry::of(RationalAngle(0, 1)).length, WithinAbs(2.0 * std::numbers::pi, 1e-14));
  const auto x = cell_grid(kHalf, 8);
  CHECK(x.front() == 0.0);
  CHECK_THAT(x.back(), WithinAbs(3.5 * std::numbers::pi, 1e-14));
  CHECK_THROWS_AS(make_meanfield_state(kHalf, 12, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("flat state is normalised and unmodulated", "[meanfield]") {
  const MeanFieldState s = make_meanfield_state(kHalf, 64, 0.0, 0.0);
  CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-14));
  const OrderParameters o = mf_orderparams(s);
  CHECK(std::abs(o.theta_plus) < 1e-14);
  CHECK(std::abs(o.theta_minus) < 1e-14);
  CHECK(std::abs(o.bunching_plus) < 1e-14);
  const auto m = mf_momentum_stats(s);
  CHECK_THAT(m.mean, WithinAbs(0.0, 1e-14));
  CHECK(m.labels.front() == -32);
  CHECK(m.labels.back() == 31);
}

TEST_CASE("order parameters of a cosine density", "[meanfield]") {
  // |psi|^2 = (1 + 2 e cos((1-s)x + c)) / L gives Theta_+ = e e^{-ic}.
  const int n = 128;
  MeanFieldState s = make_meanfield_state(kHalf, n, 0.0, 0.0);
  const auto x = cell_grid(kHalf, n);
  const double e = 0.2, c = 0.7;
  for (int j = 0; j < n; ++j)
    s.psi(j) = std::sqrt((1.0 + 2.0 * e * std::cos(0.5 * x[j] + c)) / s.cell_length());
  const OrderParameters o = mf_orderparams(s);
  CHECK(std::abs(o.theta_plus - std::polar(e, -c)) < 1e-13);
  CHECK(std::abs(o.theta_minus) < 1e-13);
  CHECK(std::abs(o.bunching_plus) < 1e-13);
}

TEST_CASE("optical potential matches the c-number field formula", "[meanfield]") {
  const cplx ap(0.4, -0.3), am(-0.2, 0.5);
  const auto v = optical_potential(kHalf, 64, ap, am, 12.0, -1.0);
  const auto x = cell_grid(kHalf, 64);
  for (int j = 0; j < 64; ++j) {
    // eta (a+ e^{i(1-s)x} + a- e^{-i(1+s)x} + c.c.) + U0 (a+* a- e^{-2ix} + c.c.)
    const cplx pump = ap * std::polar(1.0, 0.5 * x[j]) + am * std::polar(1.0, -1.5 * x[j]);
    const cplx cross = std::conj(ap) * am * std::polar(1.0, -2.0 * x[j]);
    const double want = 2.0 * 12.0 * pump.real() - 2.0 * cross.real();
    CHECK_THAT(v(j), WithinAbs(want, 1e-12));
  }
  MeanFieldState s = make_meanfield_state(RationalAngle(0, 1), 64, ap, am);
  CHECK_THROWS_AS(mf_potential(s, kFig), std::invalid_argument);
}

TEST_CASE("decoupled fields decay at the cavity rate", "[meanfield]") {
  const PhysicalParams free{0.0, 0.0, -10.0, 10.0, kHalf};
  MeanFieldConfig cfg;
  cfg.n_grid = 32;
  cfg.dt = 1e-3;
  cfg.t_final = 0.5;
  cfg.record_interval = 0.05;
  const cplx a0(0.8, -0.3), b0(-0.4, 0.9);
  const auto r = mf_evolve(make_meanfield_state(kHalf, 32, a0, b0), free, cfg);
  const cplx f = std::exp(cplx(-10.0, -10.0) * 0.5);
  CHECK_THAT(std::abs(r.final_state.alpha_plus - a0 * f) / std::abs(a0 * f), WithinAbs(0.0, 1e-8));
  CHECK_THAT(std::abs(r.final_state.alpha_minus - b0 * f) / std::abs(b0 * f), WithinAbs(0.0, 1e-8));
}

TEST_CASE("split-step evolution conserves the norm", "[meanfield]") {
  MeanFieldConfig cfg;
  cfg.n_grid = 128;
  cfg.t_final = 2.0;
  cfg.record_interval = 0.1;
  cfg.seed = 1e-2;
  const auto r = mf_evolve(seeded_state(kHalf, cfg), kFig, cfg);
  CHECK(r.max_norm_drift <= 1e-8);
  CHECK(r.trajectory.times.size() == 21);
  for (const char* col : {"alpha_plus_abs", "alpha_minus_arg", "norm_error", "p_mean"})
    CHECK(r.trajectory.column(col).size() == 21);
  CHECK(r.max_boundary < 1e-3);
}

TEST_CASE("translation covariance of one step", "[meanfield]") {
  const MeanFieldState s = busy_state(128);
  for (int cells : {1, 5, 37, -9}) {
    CAPTURE(cells);
    const MeanFieldState a = mf_step(translate(s, cells), kFig, 1e-3);
    const MeanFieldState b = translate(mf_step(s, kFig, 1e-3), cells);
    CHECK(state_distance(a, b) <= 1e-8);
  }
  // A full translation through the cell is the identity.
  CHECK(state_distance(translate(s, 128), s) < 1e-12);
}

TEST_CASE("split-step scheme is second order", "[meanfield]") {
  const MeanFieldState s = busy_state(128);
  const double t = 0.2;
  const MeanFieldState ref = run(s, 0.02 / 64, t);
  const double e1 = state_distance(run(s, 0.02, t), ref);
  const double e2 = state_distance(run(s, 0.01, t), ref);
  const double e3 = state_distance(run(s, 0.005, t), ref);
  const double order1 = std::log2(e1 / e2), order2 = std::log2(e2 / e3);
  CAPTURE(e1, e2, e3);
  CHECK(order1 > 1.8);
  CHECK(order1 < 2.3);
  CHECK(order2 > 1.8);
  CHECK(order2 < 2.3);
}

TEST_CASE("mean-field configuration checks", "[meanfield]") {
  MeanFieldConfig c;
  c.record_interval = 0.3;
  c.t_final = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = MeanFieldConfig{};
  c.n_grid = 100;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  MeanFieldConfig ok;
  CHECK_THROWS_AS(mf_evolve(make_meanfield_state(kHalf, 64, 0.0, 0.0), kFig, ok),
                  std::invalid_argument);
}
