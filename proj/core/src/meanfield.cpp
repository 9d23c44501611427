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

#include "ringcav/meanfield.hpp"

#include "ringcav/csv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ringcav {

CellGeometry CellGeometry::of(const RationalAngle& angle) {
  // Cutoffs are irrelevant here; make_lattice only supplies the kicks.
  const LatticeSpec l = make_lattice(angle, 2 * angle.denominator(), 0, 0);
  CellGeometry g;
  g.momentum_quantum = l.momentum_quantum();
  g.kick_plus = l.kick_plus();
  g.kick_minus = l.kick_minus();
  g.kick_bunching = l.kick_bunching();
  g.length = l.cell_length();
  return g;
}

double MeanFieldState::cell_length() const { return CellGeometry::of(angle).length; }

double MeanFieldState::norm() const { return psi.squaredNorm() * dx(); }

MeanFieldState make_meanfield_state(const RationalAngle& angle, int n_grid, cplx alpha_plus,
                                    cplx alpha_minus) {
  if (!is_power_of_two(n_grid) || n_grid < 4)
    throw std::invalid_argument("make_meanfield_state: grid size must be a power of two >= 4");
  MeanFieldState s;
  s.angle = angle;
  s.psi = Eigen::VectorXcd::Constant(n_grid, 1.0 / std::sqrt(CellGeometry::of(angle).length));
  s.alpha_plus = alpha_plus;
  s.alpha_minus = alpha_minus;
  return s;
}

std::vector<double> cell_grid(const RationalAngle& angle, int n_grid) {
  const double len = CellGeometry::of(angle).length;
  std::vector<double> x(static_cast<std::size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j) x[static_cast<std::size_t>(j)] = j * len / n_grid;
  return x;
}

Eigen::VectorXd optical_potential(const RationalAngle& angle, int n_grid, cplx alpha_plus,
                                  cplx alpha_minus, double eta, double u0) {
  const CellGeometry g = CellGeometry::of(angle);
  const auto x = cell_grid(angle, n_grid);
  const double rp = std::abs(alpha_plus), rm = std::abs(alpha_minus);
  const double pp = std::arg(alpha_plus), pm = std::arg(alpha_minus);
  const double q = g.momentum_quantum;
  Eigen::VectorXd v(n_grid);
  for (int j = 0; j < n_grid; ++j) {
    const double xj = x[static_cast<std::size_t>(j)];
    v(j) = 2.0 * u0 * rp * rm * std::cos(g.kick_bunching * q * xj + pp - pm) +
           2.0 * eta *
               (rp * std::cos(g.kick_plus * q * xj + pp) + rm * std::cos(g.kick_minus * q * xj - pm));
  }
  return v;
}

Eigen::VectorXd mf_potential(const MeanFieldState& state, const PhysicalParams& params) {
  if (!(params.angle == state.angle))
    throw std::invalid_argument("mf_potential: parameter angle differs from the state's");
  return optical_potential(state.angle, state.grid_points(), state.alpha_plus, state.alpha_minus,
                           params.eta, params.u0);
}

OrderParameters order_parameters(const RationalAngle& angle, std::span<const cplx> psi,
                                 double cell_length) {
  const CellGeometry g = CellGeometry::of(angle);
  const int n = static_cast<int>(psi.size());
  const double dx = cell_length / n;
  const double dphase = 2.0 * std::numbers::pi / n;  // q * dx
  OrderParameters o;
  cplx b = 0.0, tp = 0.0, tm = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rho = std::norm(psi[static_cast<std::size_t>(j)]);
    // Reduce the integer phase index mod n so large j stays exact.
    auto wave = [&](int kick) {
      const long m = (static_cast<long>(kick) * j) % n;
      return std::polar(1.0, dphase * static_cast<double>(m));
    };
    b += rho * wave(g.kick_bunching);
    tp += rho * wave(g.kick_plus);
    tm += rho * std::conj(wave(g.kick_minus));
  }
  o.bunching_plus = b * dx;
  o.bunching_minus = std::conj(o.bunching_plus);
  o.theta_plus = tp * dx;
  o.theta_minus = tm * dx;
  return o;
}

OrderParameters mf_orderparams(const MeanFieldState& state) {
  return order_parameters(state.angle, {state.psi.data(), static_cast<std::size_t>(state.psi.size())},
                          state.cell_length());
}

MomentumStats mf_momentum_stats(const MeanFieldState& state) {
  const int n = state.grid_points();
  Fft fft(n);
  std::vector<cplx> spec(static_cast<std::size_t>(n));
  fft.forward({state.psi.data(), static_cast<std::size_t>(n)}, spec);
  const auto k = fft_frequencies(n);
  const double q = CellGeometry::of(state.angle).momentum_quantum;
  MomentumStats st;
  double total = 0.0;
  for (const cplx& c : spec) total += std::norm(c);
  // Ascending momentum order: FFT indices n/2 .. n-1 then 0 .. n/2-1.
  for (int i = 0; i < n; ++i) {
    const int j = (i + n / 2) % n;
    const double w = std::norm(spec[static_cast<std::size_t>(j)]) / total;
    st.labels.push_back(k[static_cast<std::size_t>(j)]);
    st.momenta.push_back(k[static_cast<std::size_t>(j)] * q);
    st.distribution.push_back(w);
    st.mean += st.momenta.back() * w;
  }
  return st;
}

MeanFieldPropagator::MeanFieldPropagator(const PhysicalParams& params, int n_grid, double dt)
    : params_(params), n_(n_grid), dt_(dt), fft_(n_grid) {
  params.validate();
  if (!is_power_of_two(n_grid) || n_grid < 4)
    throw std::invalid_argument("MeanFieldPropagator: grid size must be a power of two >= 4");
  if (!(dt > 0.0)) throw std::invalid_argument("MeanFieldPropagator: dt must be positive");
  const double q = CellGeometry::of(params.angle).momentum_quantum;
  for (int k : fft_frequencies(n_grid)) {
    const double p = k * q;
    half_kinetic_.push_back(std::polar(1.0, -p * p * 0.5 * dt));
  }
  work_.resize(static_cast<std::size_t>(n_grid));
}

void MeanFieldPropagator::kinetic_half_step(Eigen::VectorXcd& psi) {
  const std::span<cplx> s{psi.data(), static_cast<std::size_t>(n_)};
  fft_.forward(s, work_);
  for (int i = 0; i < n_; ++i) work_[static_cast<std::size_t>(i)] *= half_kinetic_[static_cast<std::size_t>(i)];
  fft_.backward(work_, s);
}

void MeanFieldPropagator::advance_fields(cplx& ap, cplx& am, const OrderParameters& o,
                                         double h) const {
  const cplx diag(-params_.delta_c + params_.u0, -params_.kappa);
  const cplx i(0.0, 1.0);
  const double u0 = params_.u0, eta = params_.eta;
  auto f = [&](cplx p, cplx m, cplx& dp, cplx& dm) {
    dp = -i * (diag * p + u0 * std::conj(o.bunching_plus) * m + eta * std::conj(o.theta_plus));
    dm = -i * (diag * m + u0 * std::conj(o.bunching_minus) * p + eta * std::conj(o.theta_minus));
  };
  cplx k1p, k1m, k2p, k2m, k3p, k3m, k4p, k4m;
  f(ap, am, k1p, k1m);
  f(ap + 0.5 * h * k1p, am + 0.5 * h * k1m, k2p, k2m);
  f(ap + 0.5 * h * k2p, am + 0.5 * h * k2m, k3p, k3m);
  f(ap + h * k3p, am + h * k3m, k4p, k4m);
  ap += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  am += h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
}

void MeanFieldPropagator::step(MeanFieldState& state) {
  if (state.grid_points() != n_ || !(state.angle == params_.angle))
    throw std::invalid_argument("MeanFieldPropagator::step: state does not match the propagator");
  kinetic_half_step(state.psi);
  // |psi|^2 is unchanged by the potential step, so these are midpoint values.
  const OrderParameters o = mf_orderparams(state);
  cplx ap = state.alpha_plus, am = state.alpha_minus;
  advance_fields(ap, am, o, 0.5 * dt_);
  const cplx mid_p = ap, mid_m = am;
  advance_fields(ap, am, o, 0.5 * dt_);
  const Eigen::VectorXd v =
      optical_potential(state.angle, n_, mid_p, mid_m, params_.eta, params_.u0);
  for (int j = 0; j < n_; ++j) state.psi(j) *= std::polar(1.0, -v(j) * dt_);
  kinetic_half_step(state.psi);
  state.alpha_plus = ap;
  state.alpha_minus = am;
}

MeanFieldState mf_step(const MeanFieldState& state, const PhysicalParams& params, double dt) {
  MeanFieldPropagator prop(params, state.grid_points(), dt);
  MeanFieldState out = state;
  prop.step(out);
  return out;
}

void MeanFieldConfig::validate() const {
  if (!is_power_of_two(n_grid) || n_grid < 4)
    throw std::invalid_argument("MeanFieldConfig: n_grid must be a power of two >= 4");
  if (!(dt > 0.0) || !(t_final > 0.0) || !(record_interval > 0.0) || !(max_norm_drift > 0.0))
    throw std::invalid_argument("MeanFieldConfig: steps, times and tolerances must be positive");
  if (!std::isfinite(seed)) throw std::invalid_argument("MeanFieldConfig: seed must be finite");
  const double records = t_final / record_interval;
  if (std::abs(records - std::round(records)) > 1e-9 * std::max(1.0, records))
    throw std::invalid_argument("MeanFieldConfig: t_final must be a multiple of record_interval");
}

MeanFieldState seeded_state(const RationalAngle& angle, const MeanFieldConfig& cfg) {
  return make_meanfield_state(angle, cfg.n_grid, cfg.seed, cfg.seed);
}

MeanFieldResult mf_evolve(const MeanFieldState& initial, const PhysicalParams& params,
                          const MeanFieldConfig& cfg) {
  cfg.validate();
  if (initial.grid_points() != cfg.n_grid)
    throw std::invalid_argument("mf_evolve: state grid differs from the configuration");
  const auto steps_per_record =
      static_cast<long>(std::ceil(cfg.record_interval / cfg.dt - 1e-9));
  MeanFieldPropagator prop(params, cfg.n_grid, cfg.record_interval / steps_per_record);

  MeanFieldResult res;
  res.final_state = initial;
  MeanFieldState& s = res.final_state;
  Trajectory& traj = res.trajectory;
  const double norm0 = s.norm();

  auto record = [&](double t) {
    const auto mom = mf_momentum_stats(s);
    const auto o = mf_orderparams(s);
    const double drift = std::abs(s.norm() - norm0);
    const std::size_t nd = mom.distribution.size();
    const double boundary = mom.distribution[0] + mom.distribution[1] +
                            mom.distribution[nd - 1] + mom.distribution[nd - 2];
    res.max_norm_drift = std::max(res.max_norm_drift, drift);
    res.max_boundary = std::max(res.max_boundary, boundary);
    traj.times.push_back(t);
    traj.add_column("p_mean").push_back(mom.mean);
    traj.add_column("n_plus").push_back(std::norm(s.alpha_plus));
    traj.add_column("n_minus").push_back(std::norm(s.alpha_minus));
    traj.add_column("theta_plus_abs").push_back(std::abs(o.theta_plus));
    traj.add_column("theta_minus_abs").push_back(std::abs(o.theta_minus));
    traj.add_column("bunching_abs").push_back(std::abs(o.bunching_plus));
    traj.add_column("log_negativity").push_back(0.0);
    traj.add_column("field_plus_abs").push_back(std::abs(s.alpha_plus));
    traj.add_column("field_minus_abs").push_back(std::abs(s.alpha_minus));
    traj.add_column("boundary_atom").push_back(boundary);
    traj.add_column("boundary_plus").push_back(0.0);
    traj.add_column("boundary_minus").push_back(0.0);
    traj.add_column("trace_error").push_back(drift);
    traj.add_column("min_eigenvalue").push_back(0.0);
    traj.add_column("alpha_plus_abs").push_back(std::abs(s.alpha_plus));
    traj.add_column("alpha_plus_arg").push_back(std::arg(s.alpha_plus));
    traj.add_column("alpha_minus_abs").push_back(std::abs(s.alpha_minus));
    traj.add_column("alpha_minus_arg").push_back(std::arg(s.alpha_minus));
    traj.add_column("norm_error").push_back(drift);
    if (drift > cfg.max_norm_drift)
      throw EvolutionError("mf_evolve: norm drift " + format_double(drift) + " at t=" +
                           format_double(t));
  };

  record(0.0);
  const auto n_records = std::lround(cfg.t_final / cfg.record_interval);
  for (long r = 1; r <= n_records; ++r) {
    for (long k = 0; k < steps_per_record; ++k) prop.step(s);
    record(static_cast<double>(r) * cfg.record_interval);
  }
  return res;
}

MeanFieldState translate(const MeanFieldState& state, int cells) {
  const int n = state.grid_points();
  const int shift = ((cells % n) + n) % n;
  MeanFieldState out = state;
  for (int j = 0; j < n; ++j) out.psi((j + shift) % n) = state.psi(j);
  const CellGeometry g = CellGeometry::of(state.angle);
  const double d = g.momentum_quantum * state.dx() * cells;
  out.alpha_plus *= std::polar(1.0, -g.kick_plus * d);
  out.alpha_minus *= std::polar(1.0, g.kick_minus * d);
  return out;
}

}  // namespace ringcav
