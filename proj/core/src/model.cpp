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

#include "ringcav/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ringcav {

void PhysicalParams::validate() const {
  if (!std::isfinite(eta) || !std::isfinite(u0) || !std::isfinite(delta_c) ||
      !std::isfinite(kappa))
    throw std::invalid_argument("PhysicalParams: non-finite parameter");
  if (kappa < 0.0) throw std::invalid_argument("PhysicalParams: kappa must be >= 0");
}

namespace {

void require_matching_angle(const LatticeSpec& spec, const PhysicalParams& params) {
  if (!(spec.angle() == params.angle))
    throw std::invalid_argument("lattice and parameters use different pump angles");
}

Operator kinetic(const LatticeSpec& spec) {
  const int dim = spec.atom_dim();
  const double q = spec.momentum_quantum();
  std::vector<Triplet> t;
  for (int i = 0; i < dim; ++i) {
    const double p = spec.momentum_label(i) * q;
    if (p != 0.0) t.emplace_back(i, i, p * p);
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return Operator{{dim}, m};
}

}  // namespace

Operator build_h_atom(const LatticeSpec& spec, const PhysicalParams& params) {
  require_matching_angle(spec, params);
  params.validate();

  const Operator ia = identity(spec.atom_dim());
  const Operator ip = identity(spec.cutoff_plus() + 1);
  const Operator im = identity(spec.cutoff_minus() + 1);
  const Operator ap = annihilation(spec.cutoff_plus());
  const Operator am = annihilation(spec.cutoff_minus());
  const Operator np = number_operator(spec.cutoff_plus());
  const Operator nm = number_operator(spec.cutoff_minus());

  Operator h = embed(spec, kinetic(spec), ip, im);

  // a+^dag a- e^{-2ikx} + h.c.
  const Operator cross = embed(spec, momentum_shift(spec, -spec.kick_bunching()),
                               ap.adjoint(), am);
  const Operator dispersive =
      embed(spec, ia, np, im) + embed(spec, ia, ip, nm) + cross + cross.adjoint();
  h = h + cplx(params.u0) * dispersive;

  // a+ e^{ikx(1 - sin phi)} + a- e^{-ikx(1 + sin phi)} + h.c.
  const Operator pump_plus = embed(spec, momentum_shift(spec, spec.kick_plus()), ap, im);
  const Operator pump_minus = embed(spec, momentum_shift(spec, -spec.kick_minus()), ip, am);
  const Operator pump = pump_plus + pump_minus;
  h = h + cplx(params.eta) * (pump + pump.adjoint());

  h.data.prune(cplx(0.0));
  return h;
}

Operator build_h_cav(const LatticeSpec& spec, const PhysicalParams& params) {
  require_matching_angle(spec, params);
  const Operator ia = identity(spec.atom_dim());
  const Operator ip = identity(spec.cutoff_plus() + 1);
  const Operator im = identity(spec.cutoff_minus() + 1);
  Operator n_tot = embed(spec, ia, number_operator(spec.cutoff_plus()), im) +
                   embed(spec, ia, ip, number_operator(spec.cutoff_minus()));
  Operator h = cplx(-params.delta_c) * n_tot;
  h.data.prune(cplx(0.0));
  return h;
}

Operator build_hamiltonian(const LatticeSpec& spec, const PhysicalParams& params) {
  Operator h = build_h_atom(spec, params) + build_h_cav(spec, params);
  h.data.prune(cplx(0.0));
  return h;
}

std::vector<Jump> cavity_jumps(const LatticeSpec& spec, double kappa) {
  const Operator ia = identity(spec.atom_dim());
  const Operator ip = identity(spec.cutoff_plus() + 1);
  const Operator im = identity(spec.cutoff_minus() + 1);
  return {Jump{embed(spec, ia, annihilation(spec.cutoff_plus()), im), kappa},
          Jump{embed(spec, ia, ip, annihilation(spec.cutoff_minus())), kappa}};
}

DenseMatrix lindblad_rhs(const Operator& h, const std::vector<Jump>& jumps,
                         const DenseMatrix& rho) {
  if (h.dimension() != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  const cplx i(0.0, 1.0);
  DenseMatrix out = -i * (h.data * rho);
  out += i * (rho * h.data);
  for (const Jump& j : jumps) {
    if (j.op.dimension() != rho.rows())
      throw std::invalid_argument("lindblad_rhs: jump dimension mismatch");
    const SparseMatrix ldl = j.op.data.adjoint() * j.op.data;
    const DenseMatrix lr = j.op.data * rho;
    out += (2.0 * j.rate) * (lr * j.op.data.adjoint());
    out -= j.rate * (ldl * rho);
    out -= j.rate * (rho * ldl);
  }
  return out;
}

DenseMatrix liouvillian_apply(const Operator& h, const LatticeSpec& spec, double kappa,
                              const DensityState& rho) {
  if (h.dims != spec.dims() || rho.dims != spec.dims())
    throw std::invalid_argument("liouvillian_apply: dims mismatch");
  return lindblad_rhs(h, cavity_jumps(spec, kappa), rho.data);
}

std::vector<int> translation_charge(const LatticeSpec& spec) {
  const Dims d = spec.dims();
  std::vector<int> charge(static_cast<std::size_t>(spec.dimension()));
  for (Index k = 0; k < spec.dimension(); ++k) {
    const auto idx = unflatten(k, d);
    charge[static_cast<std::size_t>(k)] = spec.momentum_label(idx[0]) +
                                          spec.kick_plus() * idx[1] -
                                          spec.kick_minus() * idx[2];
  }
  return charge;
}

Operator translation_operator(const LatticeSpec& spec, double theta) {
  const auto charge = translation_charge(spec);
  const Index dim = spec.dimension();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(dim));
  for (Index k = 0; k < dim; ++k)
    t.emplace_back(k, k, std::polar(1.0, theta * charge[static_cast<std::size_t>(k)]));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return Operator{spec.dims(), m};
}

Operator atom_plane_wave(const LatticeSpec& spec, int steps) {
  return embed(spec, momentum_shift(spec, steps), identity(spec.cutoff_plus() + 1),
               identity(spec.cutoff_minus() + 1));
}

}  // namespace ringcav
