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

#include "ringcav/quantum_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ringcav/block_lindblad.hpp"
#include "ringcav/csv.hpp"
#include "ringcav/dopri5.hpp"
#include "ringcav/observables.hpp"

namespace ringcav {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !(t_final > 0.0) || !(rel_tol > 0.0) || !(abs_tol > 0.0) ||
      !(record_interval > 0.0) || snapshot_interval < 0.0 || !(max_trace_drift > 0.0))
    throw std::invalid_argument("IntegratorConfig: steps, times and tolerances must be positive");
}

const std::vector<double>& Trajectory::column(const std::string& name) const {
  for (const auto& [n, v] : series)
    if (n == name) return v;
  throw std::out_of_range("Trajectory: no column " + name);
}

std::vector<double>& Trajectory::add_column(const std::string& name) {
  for (auto& [n, v] : series)
    if (n == name) return v;
  series.emplace_back(name, std::vector<double>{});
  return series.back().second;
}

bool Trajectory::has_column(const std::string& name) const {
  return std::any_of(series.begin(), series.end(),
                     [&](const auto& s) { return s.first == name; });
}

double fit_slope(const Trajectory& traj, const std::string& column, double t0, double t1) {
  const auto& v = traj.column(column);
  const double eps = 1e-9 * std::max(1.0, std::abs(t1));
  double n = 0.0, st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t0 - eps || t > t1 + eps) continue;
    n += 1.0;
    st += t;
    sv += v[i];
    stt += t * t;
    stv += t * v[i];
  }
  if (n < 2.0) throw std::invalid_argument("fit_slope: fewer than two samples in range");
  return (n * stv - st * sv) / (n * stt - st * st);
}

double peak_slope(const Trajectory& traj, const std::string& column) {
  const auto& v = traj.column(column);
  if (traj.times.size() < 2) throw std::invalid_argument("peak_slope: need two samples");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < traj.times.size(); ++i)
    best = std::max(best, (v[i] - v[i - 1]) / (traj.times[i] - traj.times[i - 1]));
  return best;
}

double TruncationDiagnostics::worst() const {
  return std::max({atom_boundary, plus_top, minus_top});
}

TruncationDiagnostics check_truncation(const DensityState& rho, const LatticeSpec& spec) {
  if (rho.dims != spec.dims()) throw std::invalid_argument("check_truncation: dims mismatch");
  TruncationDiagnostics d;
  const int na = spec.atom_dim();
  for (Index f = 0; f < rho.dimension(); ++f) {
    const auto idx = unflatten(f, rho.dims);
    const double p = rho.data(f, f).real();
    if (idx[0] <= 1 || idx[0] >= na - 2) d.atom_boundary += p;
    if (idx[1] == spec.cutoff_plus()) d.plus_top += p;
    if (idx[2] == spec.cutoff_minus()) d.minus_top += p;
  }
  return d;
}

DensityState initial_state(const LatticeSpec& spec) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(spec.dimension());
  psi(spec.basis_index(0, 0, 0)) = 1.0;
  return pure_state(spec.dims(), psi);
}

namespace {

struct Probes {
  Operator theta_plus;
  Operator theta_minus;
  Operator bunching;
  Operator a_plus;
  Operator a_minus;
};

Probes make_probes(const LatticeSpec& spec) {
  const Operator ia = identity(spec.atom_dim());
  const Operator ip = identity(spec.cutoff_plus() + 1);
  const Operator im = identity(spec.cutoff_minus() + 1);
  return Probes{atom_plane_wave(spec, spec.kick_plus()),
                atom_plane_wave(spec, -spec.kick_minus()),
                atom_plane_wave(spec, spec.kick_bunching()),
                embed(spec, ia, annihilation(spec.cutoff_plus()), im),
                embed(spec, ia, ip, annihilation(spec.cutoff_minus()))};
}

double block_min_eigenvalue(const BlockDensity& rho) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : rho.blocks) {
    if (b.rows() == 1) {
      m = std::min(m, b(0, 0).real());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(b, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues()(0));
  }
  return m;
}

double mean(const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) s += static_cast<double>(n) * p[n];
  return s;
}

}  // namespace

EvolutionResult evolve(const DensityState& rho0, const Operator& h, const LatticeSpec& spec,
                       double kappa, const IntegratorConfig& cfg) {
  cfg.validate();
  if (rho0.dims != spec.dims() || h.dims != spec.dims())
    throw std::invalid_argument("evolve: state, Hamiltonian and lattice dims differ");
  if (kappa < 0.0) throw std::invalid_argument("evolve: kappa must be >= 0");

  const auto jumps = cavity_jumps(spec, kappa);
  BlockLindblad engine(BlockPartition::invariant(h, jumps, rho0.data), h, jumps);
  const BlockPartition& part = engine.partition();
  BlockDensity y = gather(part, rho0.data);
  const Probes probes = make_probes(spec);

  EvolutionResult res;
  res.blocks = part.size();
  res.min_eigenvalue = std::numeric_limits<double>::infinity();
  Trajectory& traj = res.trajectory;

  auto record = [&](double t) {
    DensityState rho{spec.dims(), scatter(part, y)};
    const auto mom = momentum_stats(rho, spec);
    const auto pp = photon_distribution(rho, Subsystem::plus);
    const auto pm = photon_distribution(rho, Subsystem::minus);
    const auto trunc = check_truncation(rho, spec);
    const double trace_err = std::abs(y.trace() - 1.0);
    const double min_ev = block_min_eigenvalue(y);
    traj.times.push_back(t);
    traj.add_column("p_mean").push_back(mom.mean);
    traj.add_column("n_plus").push_back(mean(pp));
    traj.add_column("n_minus").push_back(mean(pm));
    traj.add_column("theta_plus_abs").push_back(std::abs(expectation(rho, probes.theta_plus)));
    traj.add_column("theta_minus_abs").push_back(std::abs(expectation(rho, probes.theta_minus)));
    traj.add_column("bunching_abs").push_back(std::abs(expectation(rho, probes.bunching)));
    traj.add_column("log_negativity").push_back(log_negativity(rho));
    traj.add_column("field_plus_abs").push_back(std::abs(expectation(rho, probes.a_plus)));
    traj.add_column("field_minus_abs").push_back(std::abs(expectation(rho, probes.a_minus)));
    traj.add_column("boundary_atom").push_back(trunc.atom_boundary);
    traj.add_column("boundary_plus").push_back(trunc.plus_top);
    traj.add_column("boundary_minus").push_back(trunc.minus_top);
    traj.add_column("trace_error").push_back(trace_err);
    traj.add_column("min_eigenvalue").push_back(min_ev);
    res.min_eigenvalue = std::min(res.min_eigenvalue, min_ev);
    res.worst_truncation.atom_boundary =
        std::max(res.worst_truncation.atom_boundary, trunc.atom_boundary);
    res.worst_truncation.plus_top = std::max(res.worst_truncation.plus_top, trunc.plus_top);
    res.worst_truncation.minus_top = std::max(res.worst_truncation.minus_top, trunc.minus_top);
    if (cfg.snapshot_interval > 0.0) {
      const double k = std::round(t / cfg.snapshot_interval);
      if (std::abs(t - k * cfg.snapshot_interval) < 1e-9 * std::max(1.0, t))
        traj.snapshots.emplace_back(t, std::move(rho));
    }
  };

  auto rhs = [&engine](const BlockDensity& in, BlockDensity& out) { engine.apply(in, out); };
  DormandPrince<BlockDensity, decltype(rhs)> stepper(rhs, cfg.rel_tol, cfg.abs_tol, cfg.dt,
                                                      1e-12 * cfg.t_final);
  const cplx trace0 = 1.0;
  auto on_accept = [&](double t, BlockDensity& state) {
    state.hermitize();
    const double drift = std::abs(state.trace() - trace0);
    res.max_trace_drift = std::max(res.max_trace_drift, drift);
    if (drift > cfg.max_trace_drift)
      throw EvolutionError("evolve: trace drift " + format_double(drift) + " at t=" +
                           format_double(t));
  };

  double t = 0.0;
  record(t);
  const auto n_records = static_cast<long>(std::ceil(cfg.t_final / cfg.record_interval - 1e-9));
  for (long k = 1; k <= n_records; ++k) {
    const double target = std::min(cfg.t_final, static_cast<double>(k) * cfg.record_interval);
    stepper.integrate(y, t, target, on_accept);
    record(t);
  }
  res.accepted_steps = stepper.stats().accepted;
  res.rejected_steps = stepper.stats().rejected;
  res.final_state = DensityState{spec.dims(), scatter(part, y)};
  return res;
}

DensityState propagate(const DensityState& rho0, const Operator& h,
                       const std::vector<Jump>& jumps, double t_end,
                       const IntegratorConfig& cfg) {
  BlockLindblad engine(BlockPartition::invariant(h, jumps, rho0.data), h, jumps);
  BlockDensity y = gather(engine.partition(), rho0.data);
  auto rhs = [&engine](const BlockDensity& in, BlockDensity& out) { engine.apply(in, out); };
  DormandPrince<BlockDensity, decltype(rhs)> stepper(rhs, cfg.rel_tol, cfg.abs_tol, cfg.dt,
                                                      1e-12 * std::max(t_end, 1e-300));
  double t = 0.0;
  stepper.integrate(y, t, t_end, [](double, BlockDensity& s) { s.hermitize(); });
  return DensityState{rho0.dims, scatter(engine.partition(), y)};
}

}  // namespace ringcav
