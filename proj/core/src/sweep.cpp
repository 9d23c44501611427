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

#include "ringcav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace ringcav {

namespace {

double max_offdiagonal(const DensityState& r) {
  double m = 0.0;
  for (Index c = 0; c < r.dimension(); ++c)
    for (Index i = 0; i < r.dimension(); ++i)
      if (i != c) m = std::max(m, std::abs(r.data(i, c)));
  return m;
}

double mean_photons(const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) s += static_cast<double>(n) * p[n];
  return s;
}

}  // namespace

FieldAnalysis analyze_fields(const DensityState& rho, double annulus_threshold,
                             int wigner_points) {
  FieldAnalysis fa;
  const DensityState rp = partial_trace(rho, {Subsystem::plus});
  const DensityState rm = partial_trace(rho, {Subsystem::minus});
  fa.coherence_plus = max_offdiagonal(rp);
  fa.coherence_minus = max_offdiagonal(rm);
  fa.wigner_plus = wigner_default(rp, "plus", wigner_points);
  fa.wigner_minus = wigner_default(rm, "minus", wigner_points);
  fa.plus = extract_field(fa.wigner_plus, annulus_threshold);
  fa.minus = extract_field(fa.wigner_minus, annulus_threshold);
  return fa;
}

double SymmetryProbes::max() const {
  return std::max({field_plus, field_minus, theta_plus, theta_minus});
}

SymmetryProbes symmetry_probes(const DensityState& rho, const LatticeSpec& spec) {
  const Operator ia = identity(spec.atom_dim());
  const Operator ip = identity(spec.cutoff_plus() + 1);
  const Operator im = identity(spec.cutoff_minus() + 1);
  SymmetryProbes s;
  s.field_plus = std::abs(expectation(rho, embed(spec, ia, annihilation(spec.cutoff_plus()), im)));
  s.field_minus = std::abs(expectation(rho, embed(spec, ia, ip, annihilation(spec.cutoff_minus()))));
  s.theta_plus = std::abs(expectation(rho, atom_plane_wave(spec, spec.kick_plus())));
  s.theta_minus = std::abs(expectation(rho, atom_plane_wave(spec, -spec.kick_minus())));
  return s;
}

void SweepOptions::validate() const {
  base.validate();
  if (etas.empty()) throw std::invalid_argument("SweepOptions: empty eta grid");
  for (double e : etas)
    if (!std::isfinite(e)) throw std::invalid_argument("SweepOptions: non-finite eta");
  if (n_max < 1 || cutoff_plus < 0 || cutoff_minus < 0)
    throw std::invalid_argument("SweepOptions: invalid lattice cutoffs");
  if (!(truncation_limit > 0.0) || max_dimension < 1)
    throw std::invalid_argument("SweepOptions: invalid truncation limits");
  if (!is_power_of_two(ground_state_grid) || ground_state_grid < 4)
    throw std::invalid_argument("SweepOptions: ground-state grid must be a power of two");
  steady.validate();
}

SweepPoint analyze_point(const SteadyStateResult& ss, const LatticeSpec& spec,
                         const PhysicalParams& params, int ground_state_grid,
                         double truncation_limit) {
  SweepPoint pt;
  pt.eta = params.eta;
  pt.residual = ss.residual;
  pt.truncation = ss.truncation;
  pt.truncation_ok = ss.truncation.worst() < truncation_limit;
  pt.degenerate = ss.degenerate;
  pt.time = ss.time;
  pt.cross_check_distance = ss.cross_check_distance;
  pt.n_max = spec.n_max();
  pt.cutoff_plus = spec.cutoff_plus();
  pt.cutoff_minus = spec.cutoff_minus();

  const FieldAnalysis fa = analyze_fields(ss.rho);
  pt.alpha_plus = fa.plus.magnitude;
  pt.alpha_minus = fa.minus.magnitude;
  pt.contrast_plus = fa.plus.contrast;
  pt.contrast_minus = fa.minus.contrast;
  pt.coherence_plus = fa.coherence_plus;
  pt.coherence_minus = fa.coherence_minus;
  pt.symmetry = symmetry_probes(ss.rho, spec);
  pt.n_plus = mean_photons(photon_distribution(ss.rho, Subsystem::plus));
  pt.n_minus = mean_photons(photon_distribution(ss.rho, Subsystem::minus));
  pt.p_mean = momentum_stats(ss.rho, spec).mean;

  const Eigen::VectorXd v =
      build_v_quant(pt.alpha_plus, pt.alpha_minus, 0.0, 0.0, params, ground_state_grid);
  const BrokenSymmetryState gs = ground_state(v, params.angle);
  pt.theta_plus_gs = std::abs(gs.theta_plus);
  pt.theta_minus_gs = std::abs(gs.theta_minus);
  pt.gs_energy = gs.energy;
  return pt;
}

SweepResult run_sweep(const SweepOptions& opts) {
  opts.validate();
  SweepResult out;
  out.angle = opts.base.angle;
  LatticeSpec spec = make_lattice(opts.base.angle, opts.n_max, opts.cutoff_plus, opts.cutoff_minus);
  DensityState warm = initial_state(spec);
  for (double eta : opts.etas) {
    PhysicalParams params = opts.base;
    params.eta = eta;
    while (true) {
      const Operator h = build_hamiltonian(spec, params);
      SteadyStateResult ss = steady_state(h, spec, params.kappa, opts.steady, warm);
      const TruncationDiagnostics& tr = ss.truncation;
      const bool ok = tr.worst() < opts.truncation_limit;
      LatticeSpec bigger = spec;
      if (!ok && opts.grow_cutoffs) {
        bigger = make_lattice(spec.angle(),
                              spec.n_max() + (tr.atom_boundary >= opts.truncation_limit ? 4 : 0),
                              spec.cutoff_plus() + (tr.plus_top >= opts.truncation_limit ? 2 : 0),
                              spec.cutoff_minus() + (tr.minus_top >= opts.truncation_limit ? 2 : 0));
      }
      if (ok || !opts.grow_cutoffs || bigger.dimension() > opts.max_dimension) {
        out.points.push_back(analyze_point(ss, spec, params, opts.ground_state_grid,
                                           opts.truncation_limit));
        warm = std::move(ss.rho);
        break;
      }
      warm = resize_state(ss.rho, spec, bigger);
      spec = bigger;
    }
  }
  out.last_state = std::move(warm);
  out.last_lattice = spec;
  return out;
}

std::vector<SweepResult> run_sweeps(const std::vector<SweepOptions>& chains, int threads) {
  std::vector<SweepResult> results(chains.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < chains.size(); i = next++) {
      try {
        results[i] = run_sweep(chains[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n, chains.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1 || !(hi >= lo)) throw std::invalid_argument("linear_grid: invalid range");
  if (points == 1) return {lo};
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

}  // namespace ringcav
