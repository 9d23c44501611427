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

#include <string>

#include "ringcav/meanfield.hpp"
#include "ringcav/model.hpp"

namespace ringcav {

/// Optical potential with the field magnitudes read off a quantum steady
/// state and freely chosen phases. Same formula as the mean-field potential.
/// Throws std::invalid_argument on negative magnitudes.
Eigen::VectorXd build_v_quant(double mag_plus, double mag_minus, double phase_plus,
                              double phase_minus, const PhysicalParams& params, int n_grid);

/// Lowest eigenstate of p^2 + V(x) on the periodic unit cell.
struct BrokenSymmetryState {
  RationalAngle angle;
  Eigen::VectorXcd psi;  ///< sum_j |psi_j|^2 dx = 1
  double energy = 0.0;   ///< [omega_rec]
  cplx theta_plus = 0.0;
  cplx theta_minus = 0.0;
  std::string method;
};

class GroundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grids up to kDenseGroundStateLimit points use a dense eigensolve of the
/// spectral Hamiltonian; larger grids use shifted inverse iteration in the
/// plane-wave basis, where the potential is a banded convolution.
inline constexpr int kDenseGroundStateLimit = 512;
BrokenSymmetryState ground_state(const Eigen::VectorXd& potential, const RationalAngle& angle);

/// Split-step imaginary-time relaxation from the flat state with a shrinking
/// step schedule; the energy is the Rayleigh quotient of the exact grid
/// Hamiltonian. Independent of ground_state, used to cross-check it.
BrokenSymmetryState imaginary_time_ground_state(const Eigen::VectorXd& potential,
                                                const RationalAngle& angle,
                                                double energy_tol = 1e-12,
                                                long max_steps_per_stage = 2'000'000);

/// <psi| p^2 + V |psi> dx with a spectral kinetic term.
double grid_energy(const Eigen::VectorXd& potential, const RationalAngle& angle,
                   const Eigen::VectorXcd& psi);

}  // namespace ringcav
