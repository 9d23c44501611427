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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ringcav {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using DenseMatrix = Eigen::MatrixXcd;
using Triplet = Eigen::Triplet<cplx>;

/// Ordered subsystem dimensions of a composite space.
using Dims = std::vector<int>;

/// Fixed subsystem order of the composite space.
enum class Subsystem : int { atom = 0, plus = 1, minus = 2 };

Index total_dimension(const Dims& dims);

/// sin(phi) = numerator / denominator, stored as a reduced fraction.
class RationalAngle {
 public:
  RationalAngle() = default;
  /// Throws std::invalid_argument when den == 0 or |num| > |den|.
  RationalAngle(int num, int den);

  int numerator() const { return num_; }
  int denominator() const { return den_; }
  double sine() const { return static_cast<double>(num_) / den_; }

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;

 private:
  int num_ = 0;
  int den_ = 1;
};

/// Momentum lattice and Fock cutoffs of the atom + two-mode space.
///
/// Atom plane waves carry momentum n * momentum_quantum() (units of hbar k)
/// for n in [-n_max, n_max]. The three plane-wave factors of the Hamiltonian
/// shift n by kick_plus() (e^{ikx(1-sin phi)}), kick_minus()
/// (e^{ikx(1+sin phi)}) and kick_bunching() (e^{2ikx}).
class LatticeSpec {
 public:
  LatticeSpec() = default;

  const RationalAngle& angle() const { return angle_; }
  int n_max() const { return n_max_; }
  int cutoff_plus() const { return cutoff_plus_; }
  int cutoff_minus() const { return cutoff_minus_; }

  /// gcd(b - a, b + a, 2b); the lattice spacing is this over b.
  int quantum_numerator() const { return quantum_num_; }
  double momentum_quantum() const;
  int kick_plus() const;
  int kick_minus() const;
  int kick_bunching() const;
  /// Spatial period in units of 1/k (2 pi / momentum_quantum).
  double cell_length() const;

  int atom_dim() const { return 2 * n_max_ + 1; }
  Dims dims() const { return {atom_dim(), cutoff_plus_ + 1, cutoff_minus_ + 1}; }
  Index dimension() const { return total_dimension(dims()); }

  int momentum_label(int atom_index) const { return atom_index - n_max_; }
  int atom_index(int momentum_label) const { return momentum_label + n_max_; }

  /// Composite basis index of |n, n_plus, n_minus>.
  Index basis_index(int momentum_label, int n_plus, int n_minus) const;

  friend LatticeSpec make_lattice(RationalAngle angle, int n_max, int cut_plus,
                                  int cut_minus);

 private:
  RationalAngle angle_;
  int n_max_ = 0;
  int cutoff_plus_ = 0;
  int cutoff_minus_ = 0;
  int quantum_num_ = 1;
};

/// Throws std::invalid_argument on negative cutoffs or when n_max is smaller
/// than the largest kick.
LatticeSpec make_lattice(RationalAngle angle, int n_max, int cut_plus, int cut_minus);

/// Square sparse operator on a composite space.
struct Operator {
  Dims dims;
  SparseMatrix data;

  Index dimension() const { return data.rows(); }
  Operator adjoint() const;
  DenseMatrix dense() const { return DenseMatrix(data); }
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);

/// Density matrix on a composite space, stored dense.
struct DensityState {
  Dims dims;
  DenseMatrix data;

  Index dimension() const { return data.rows(); }
  cplx trace() const { return data.trace(); }
  /// max |rho - rho^dagger|
  double hermiticity_error() const;
};

DensityState pure_state(const Dims& dims, const Eigen::VectorXcd& psi);

Operator identity(int dim);
Operator annihilation(int cutoff);
Operator number_operator(int cutoff);

/// |n> -> |n + steps> on the atom momentum ladder, dropping states that
/// leave [-n_max, n_max]. Throws std::invalid_argument when |steps| > 2 n_max.
Operator momentum_shift(const LatticeSpec& spec, int steps);

/// Kronecker product in the given order; dims are concatenated.
Operator tensor(std::span<const Operator> ops);
Operator tensor(std::initializer_list<Operator> ops);

/// atom (x) plus (x) minus on the lattice's composite space.
Operator embed(const LatticeSpec& spec, const Operator& atom, const Operator& plus,
               const Operator& minus);

/// Truncated coherent state sum_n e^{-|a|^2/2} a^n / sqrt(n!) |n>, not renormalised.
Eigen::VectorXcd coherent_amplitudes(cplx alpha, int cutoff);

/// Multi-index <-> flat index helpers, first subsystem slowest.
std::vector<int> unflatten(Index flat, const Dims& dims);
Index flatten(std::span<const int> idx, const Dims& dims);

}  // namespace ringcav
