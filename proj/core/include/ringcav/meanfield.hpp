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

#pragma once

#include <span>
#include <vector>

#include "ringcav/hilbert.hpp"
#include "ringcav/model.hpp"
#include "ringcav/observables.hpp"
#include "ringcav/quantum_dynamics.hpp"
#include "ringcav/spectral.hpp"

namespace ringcav {

/// Unit cell of the lattice for a given pump angle, in units of 1/k.
struct CellGeometry {
  double momentum_quantum = 1.0;
  int kick_plus = 1;
  int kick_minus = 1;
  int kick_bunching = 2;
  double length = 0.0;

  static CellGeometry of(const RationalAngle& angle);
};

/// Atomic wavefunction sampled at x_j = j L / N on the unit cell together
/// with the two classical field amplitudes. psi is normalised so that
/// sum_j |psi_j|^2 dx = 1.
struct MeanFieldState {
  RationalAngle angle;
  Eigen::VectorXcd psi;
  cplx alpha_plus = 0.0;
  cplx alpha_minus = 0.0;

  int grid_points() const { return static_cast<int>(psi.size()); }
  double cell_length() const;
  double dx() const { return cell_length() / grid_points(); }
  double norm() const;
};

/// Flat wavefunction on n_grid points (a power of two) with the given fields.
MeanFieldState make_meanfield_state(const RationalAngle& angle, int n_grid, cplx alpha_plus,
                                    cplx alpha_minus);

/// Sample positions x_j = j L / N.
std::vector<double> cell_grid(const RationalAngle& angle, int n_grid);

/// 2 U0 |a+||a-| cos(2x + dphi) + 2 eta [|a+| cos((1-s)x + phi+) + |a-| cos((1+s)x - phi-)]
/// on the cell grid, dphi = phi+ - phi-.
Eigen::VectorXd optical_potential(const RationalAngle& angle, int n_grid, cplx alpha_plus,
                                  cplx alpha_minus, double eta, double u0);

/// optical_potential at the state's field amplitudes.
Eigen::VectorXd mf_potential(const MeanFieldState& state, const PhysicalParams& params);

/// B_pm = <e^{+-2ikx}>, Theta_pm = <e^{+-ikx(1 -+ sin phi)}>.
struct OrderParameters {
  cplx bunching_plus = 0.0;
  cplx bunching_minus = 0.0;
  cplx theta_plus = 0.0;
  cplx theta_minus = 0.0;
};

/// Rectangle-rule quadrature of |psi|^2 against the plane waves; exact for
/// band-limited densities on the periodic grid.
OrderParameters order_parameters(const RationalAngle& angle, std::span<const cplx> psi,
                                 double cell_length);
OrderParameters mf_orderparams(const MeanFieldState& state);

/// Spectral momentum distribution, labels in units of the momentum quantum.
MomentumStats mf_momentum_stats(const MeanFieldState& state);

/// Strang split-step propagator with a fixed step. Per step: half kinetic
/// step in momentum space, order parameters from the half-stepped density,
/// field amplitudes advanced by two RK4 half steps with those order
/// parameters frozen, potential step with the midpoint fields, half kinetic
/// step. Second order in dt.
class MeanFieldPropagator {
 public:
  MeanFieldPropagator(const PhysicalParams& params, int n_grid, double dt);

  void step(MeanFieldState& state);
  double dt() const { return dt_; }

 private:
  void kinetic_half_step(Eigen::VectorXcd& psi);
  void advance_fields(cplx& ap, cplx& am, const OrderParameters& o, double h) const;

  PhysicalParams params_;
  int n_;
  double dt_;
  Fft fft_;
  std::vector<cplx> half_kinetic_;
  std::vector<cplx> work_;
};

MeanFieldState mf_step(const MeanFieldState& state, const PhysicalParams& params, double dt);

struct MeanFieldConfig {
  int n_grid = 256;
  /// Real initial amplitude of both fields; breaks the symmetry of the flat state.
  double seed = 1e-3;
  double dt = 1e-3;
  double t_final = 4.0;
  double record_interval = 0.05;
  /// Norm drift above this aborts the run.
  double max_norm_drift = 1e-8;

  void validate() const;
};

struct MeanFieldResult {
  Trajectory trajectory;
  MeanFieldState final_state;
  double max_norm_drift = 0.0;
  /// Largest spectral weight found in the two outermost momentum shells.
  double max_boundary = 0.0;
};

/// Fixed-step evolution from a given state. The step is shortened so that an
/// integer number of steps fits each record interval.
///
/// Columns match evolve() (log_negativity is 0, boundary_plus/minus are 0,
/// trace_error is the norm drift, min_eigenvalue is 0) plus alpha_plus_abs,
/// alpha_plus_arg, alpha_minus_abs, alpha_minus_arg, norm_error.
MeanFieldResult mf_evolve(const MeanFieldState& initial, const PhysicalParams& params,
                          const MeanFieldConfig& cfg);

/// Flat psi with both amplitudes equal to cfg.seed.
MeanFieldState seeded_state(const RationalAngle& angle, const MeanFieldConfig& cfg);

/// Shift psi by an integer number of grid cells and rotate the fields so the
/// Hamiltonian is unchanged: a+ -> a+ e^{-i(1-s)D}, a- -> a- e^{i(1+s)D}.
MeanFieldState translate(const MeanFieldState& state, int cells);

}  // namespace ringcav
