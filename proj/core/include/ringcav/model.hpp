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

#include <vector>

#include "ringcav/hilbert.hpp"

namespace ringcav {

/// Physical parameters, all in units of the recoil frequency.
struct PhysicalParams {
  double eta = 0.0;      ///< pump amplitude
  double u0 = 0.0;       ///< light shift per photon
  double delta_c = 0.0;  ///< pump-cavity detuning
  double kappa = 0.0;    ///< field decay (photon loss at 2 kappa)
  RationalAngle angle;

  /// Throws std::invalid_argument on kappa < 0 or non-finite fields.
  void validate() const;
};

/// A Lindblad channel rate * (2 L rho L^dag - L^dag L rho - rho L^dag L).
struct Jump {
  Operator op;
  double rate = 0.0;
};

/// Kinetic + dispersive + pump terms on the lattice's composite space.
/// The atom sits at pump phase zero at x = 0.
Operator build_h_atom(const LatticeSpec& spec, const PhysicalParams& params);

/// -Delta_c (n_plus + n_minus).
Operator build_h_cav(const LatticeSpec& spec, const PhysicalParams& params);

/// build_h_atom + build_h_cav.
Operator build_hamiltonian(const LatticeSpec& spec, const PhysicalParams& params);

/// Photon loss from both modes at rate kappa.
std::vector<Jump> cavity_jumps(const LatticeSpec& spec, double kappa);

/// -i[H, rho] + kappa sum_j (2 a_j rho a_j^dag - a_j^dag a_j rho - rho a_j^dag a_j)
DenseMatrix liouvillian_apply(const Operator& h, const LatticeSpec& spec, double kappa,
                              const DensityState& rho);

/// Generic Lindblad right-hand side on a dense matrix.
DenseMatrix lindblad_rhs(const Operator& h, const std::vector<Jump>& jumps,
                         const DenseMatrix& rho);

/// Eigenvalues of the translation generator n + k_plus n_plus - k_minus n_minus
/// on the composite basis. It commutes with the Hamiltonian.
std::vector<int> translation_charge(const LatticeSpec& spec);

/// Diagonal unitary exp(i theta G) for the translation generator G. A shift
/// of the atom by Delta corresponds to theta = momentum_quantum * k * Delta.
Operator translation_operator(const LatticeSpec& spec, double theta);

/// Plane-wave operator e^{i steps q k x} acting on the atom only (identity on
/// the modes).
Operator atom_plane_wave(const LatticeSpec& spec, int steps);

}  // namespace ringcav
