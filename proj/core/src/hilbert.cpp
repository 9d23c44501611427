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

#include "ringcav/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ringcav {

Index total_dimension(const Dims& dims) {
  Index n = 1;
  for (int d : dims) n *= d;
  return n;
}

RationalAngle::RationalAngle(int num, int den) {
  if (den == 0) throw std::invalid_argument("RationalAngle: zero denominator");
  if (std::abs(num) > std::abs(den))
    throw std::invalid_argument("RationalAngle: |sin phi| must not exceed 1");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int g = std::gcd(std::abs(num), den);
  num_ = num / g;
  den_ = den / g;
}

double LatticeSpec::momentum_quantum() const {
  return static_cast<double>(quantum_num_) / angle_.denominator();
}

int LatticeSpec::kick_plus() const {
  return (angle_.denominator() - angle_.numerator()) / quantum_num_;
}

int LatticeSpec::kick_minus() const {
  return (angle_.denominator() + angle_.numerator()) / quantum_num_;
}

int LatticeSpec::kick_bunching() const { return 2 * angle_.denominator() / quantum_num_; }

double LatticeSpec::cell_length() const {
  return 2.0 * std::numbers::pi / momentum_quantum();
}

Index LatticeSpec::basis_index(int momentum_label, int n_plus, int n_minus) const {
  const int idx[3] = {atom_index(momentum_label), n_plus, n_minus};
  return flatten(idx, dims());
}

LatticeSpec make_lattice(RationalAngle angle, int n_max, int cut_plus, int cut_minus) {
  if (cut_plus < 0 || cut_minus < 0)
    throw std::invalid_argument("make_lattice: photon cutoffs must be non-negative");
  const int a = angle.numerator();
  const int b = angle.denominator();
  LatticeSpec spec;
  spec.angle_ = angle;
  spec.quantum_num_ = std::gcd(std::gcd(b - a, b + a), 2 * b);
  spec.n_max_ = n_max;
  spec.cutoff_plus_ = cut_plus;
  spec.cutoff_minus_ = cut_minus;
  const int largest =
      std::max({spec.kick_plus(), spec.kick_minus(), spec.kick_bunching()});
  if (n_max < largest)
    throw std::invalid_argument("make_lattice: n_max=" + std::to_string(n_max) +
                                " is below the largest kick " + std::to_string(largest));
  return spec;
}

Operator Operator::adjoint() const {
  return Operator{dims, SparseMatrix(data.adjoint())};
}

namespace {

void require_same_dims(const Operator& a, const Operator& b, const char* what) {
  if (a.dims != b.dims) throw std::invalid_argument(std::string(what) + ": dims mismatch");
}

}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator+");
  return Operator{a.dims, SparseMatrix(a.data + b.data)};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator-");
  return Operator{a.dims, SparseMatrix(a.data - b.data)};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dims(a, b, "operator*");
  return Operator{a.dims, SparseMatrix(a.data * b.data)};
}

Operator operator*(cplx s, const Operator& a) { return Operator{a.dims, SparseMatrix(s * a.data)}; }

double DensityState::hermiticity_error() const {
  return (data - data.adjoint()).cwiseAbs().maxCoeff();
}

DensityState pure_state(const Dims& dims, const Eigen::VectorXcd& psi) {
  if (psi.size() != total_dimension(dims))
    throw std::invalid_argument("pure_state: vector size does not match dims");
  return DensityState{dims, psi * psi.adjoint()};
}

Operator identity(int dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return Operator{{dim}, m};
}

Operator annihilation(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("annihilation: negative cutoff");
  const int dim = cutoff + 1;
  std::vector<Triplet> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return Operator{{dim}, m};
}

Operator number_operator(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("number_operator: negative cutoff");
  const int dim = cutoff + 1;
  std::vector<Triplet> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n, n, static_cast<double>(n));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return Operator{{dim}, m};
}

Operator momentum_shift(const LatticeSpec& spec, int steps) {
  const int dim = spec.atom_dim();
  if (std::abs(steps) > 2 * spec.n_max())
    throw std::invalid_argument("momentum_shift: |steps| exceeds 2 n_max");
  std::vector<Triplet> t;
  for (int i = 0; i < dim; ++i) {
    const int j = i + steps;
    if (j >= 0 && j < dim) t.emplace_back(j, i, 1.0);
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return Operator{{dim}, m};
}

namespace {

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  const Index rb = b.rows();
  const Index cb = b.cols();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Index kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * rb + ib.row(), ia.col() * cb + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix m(a.rows() * rb, a.cols() * cb);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

Operator tensor(std::span<const Operator> ops) {
  if (ops.empty()) throw std::invalid_argument("tensor: empty factor list");
  Operator out = ops.front();
  if (out.data.rows() != out.data.cols()) throw std::invalid_argument("tensor: non-square factor");
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].data.rows() != ops[i].data.cols())
      throw std::invalid_argument("tensor: non-square factor");
    out.data = kron(out.data, ops[i].data);
    out.dims.insert(out.dims.end(), ops[i].dims.begin(), ops[i].dims.end());
  }
  return out;
}

Operator tensor(std::initializer_list<Operator> ops) {
  return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

Operator embed(const LatticeSpec& spec, const Operator& atom, const Operator& plus,
               const Operator& minus) {
  const Dims d = spec.dims();
  if (atom.dimension() != d[0] || plus.dimension() != d[1] || minus.dimension() != d[2])
    throw std::invalid_argument("embed: factor dimensions do not match the lattice");
  return tensor({atom, plus, minus});
}

Eigen::VectorXcd coherent_amplitudes(cplx alpha, int cutoff) {
  Eigen::VectorXcd v(cutoff + 1);
  cplx c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n <= cutoff; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

std::vector<int> unflatten(Index flat, const Dims& dims) {
  std::vector<int> idx(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = static_cast<int>(flat % dims[k]);
    flat /= dims[k];
  }
  return idx;
}

Index flatten(std::span<const int> idx, const Dims& dims) {
  Index flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
  return flat;
}

}  // namespace ringcav
