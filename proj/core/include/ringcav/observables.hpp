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

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ringcav/hilbert.hpp"

namespace ringcav {

/// Reduce to the listed subsystems (indices into rho.dims, any order; the
/// result keeps them in ascending order). Throws on an empty or invalid list.
DensityState partial_trace(const DensityState& rho, std::span<const int> keep);
DensityState partial_trace(const DensityState& rho, std::initializer_list<Subsystem> keep);

/// Transpose the indices of one subsystem.
DenseMatrix partial_transpose(const DensityState& rho, int subsystem);

/// Eigenvalues of a Hermitian matrix, computed per connected component of its
/// nonzero pattern. Exact zeros outside the components are never touched, so
/// block-structured states of a few thousand dimensions stay cheap.
std::vector<double> hermitian_eigenvalues(const DenseMatrix& m);
double min_eigenvalue(const DensityState& rho);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityState& a, const DensityState& b);

/// log2 of the trace norm of the partial transpose over the atom (subsystem 0)
/// with both modes as the other party. Rounding below zero is clamped.
double log_negativity(const DensityState& rho);

cplx expectation(const DensityState& rho, const Operator& op);

/// Photon-number populations of one mode.
std::vector<double> photon_distribution(const DensityState& rho, Subsystem mode);
/// p[n+1] <= p[n] + tol for all n.
bool is_passive(std::span<const double> p, double tol = 1e-10);

struct MomentumStats {
  double mean = 0.0;                  ///< <p> in units of hbar k
  std::vector<int> labels;            ///< lattice labels n
  std::vector<double> momenta;        ///< n * momentum_quantum
  std::vector<double> distribution;   ///< populations
};

MomentumStats momentum_stats(const DensityState& rho, const LatticeSpec& spec);

/// exp(-l^2) sum_n l^{2n}/n! |n><n|, truncated at cutoff (not renormalised).
DensityState phase_averaged_coherent_state(double lambda, int cutoff);

/// Wigner function of a single-mode state on a rectangular grid,
/// values(i, j) = W(re_axis[i] + i im_axis[j]).
struct WignerGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  Eigen::MatrixXd values;
  std::string mode_tag;
  /// Population of the top Fock level; the grid is flagged when it exceeds 1e-6.
  double tail_population = 0.0;
  bool tail_flag = false;
};

/// points equally spaced samples of [-extent, extent].
std::vector<double> symmetric_axis(double extent, int points);

/// W(a) = (2/pi) sum_mn rho_mn <n| D(a) P D(a)^dag |m>, evaluated with the
/// closed-form displacement matrix elements (associated Laguerre polynomials).
WignerGrid wigner(const DensityState& rho_mode, std::span<const double> re_axis,
                  std::span<const double> im_axis, std::string mode_tag = "");

/// points x points grid over |Re a|, |Im a| <= max(3, 2 sqrt(cutoff)).
WignerGrid wigner_default(const DensityState& rho_mode, std::string mode_tag = "",
                          int points = 101);

/// Radial profile on the Im(a) = 0 cut averaged with the three other axis
/// rays, and the field magnitude read off its maximum.
struct FieldExtraction {
  double magnitude = 0.0;
  bool is_annulus = false;
  std::vector<double> radii;
  std::vector<double> radial_profile;
  /// Raw W along Im(a) = 0 over the full real axis.
  std::vector<double> cut;
  /// (max - centre) / max of the radial profile.
  double contrast = 0.0;
};

/// Default annulus threshold: the off-centre maximum must exceed the centre by
/// this fraction of the profile maximum.
inline constexpr double kAnnulusThreshold = 0.02;

/// Requires a grid symmetric about the origin with an odd number of points and
/// equal spacing on both axes; throws std::invalid_argument otherwise, and
/// std::domain_error when the boundary carries more than 1e-4 of the maximum.
FieldExtraction extract_field(const WignerGrid& w, double threshold = kAnnulusThreshold);

}  // namespace ringcav
