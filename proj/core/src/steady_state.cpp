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

#include "ringcav/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseLU>

#include "ringcav/block_lindblad.hpp"
#include "ringcav/csv.hpp"
#include "ringcav/dopri5.hpp"
#include "ringcav/observables.hpp"

namespace ringcav {

void SteadyStateOptions::validate() const {
  if (!(residual_tolerance > 0.0) || !(change_tolerance > 0.0) || !(t_max > 0.0) ||
      !(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_trace_drift > 0.0) ||
      !(agreement_tolerance > 0.0) || cross_check_max_dim < 0)
    throw std::invalid_argument("SteadyStateOptions: tolerances and t_max must be positive");
}

namespace {

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ka = 0; ka < a.outerSize(); ++ka)
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia)
      for (Index kb = 0; kb < b.outerSize(); ++kb)
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib)
          trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                            ia.value() * ib.value());
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix sparse_identity(Index n) {
  SparseMatrix i(n, n);
  i.setIdentity();
  return i;
}

DenseMatrix unvec(const Eigen::VectorXcd& x, Index d) {
  DenseMatrix m = Eigen::Map<const DenseMatrix>(x.data(), d, d);
  m = 0.5 * (m + m.adjoint()).eval();
  return m / m.trace();
}

/// Photon loss empties both modes and nothing refills them, so every
/// atom-only stationary state survives.
bool conserves_photon_number(const Operator& h, const LatticeSpec& spec) {
  const Operator n = embed(spec, identity(spec.atom_dim()), number_operator(spec.cutoff_plus()),
                           identity(spec.cutoff_minus() + 1)) +
                     embed(spec, identity(spec.atom_dim()), identity(spec.cutoff_plus() + 1),
                           number_operator(spec.cutoff_minus()));
  const SparseMatrix comm = h.data * n.data - n.data * h.data;
  double worst = 0.0;
  for (Index k = 0; k < comm.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(comm, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst == 0.0;
}

}  // namespace

SparseMatrix vectorized_liouvillian(const Operator& h, const std::vector<Jump>& jumps) {
  const Index d = h.dimension();
  const SparseMatrix id = sparse_identity(d);
  const cplx i(0.0, 1.0);
  SparseMatrix l = -i * (kron(id, h.data) - kron(SparseMatrix(h.data.transpose()), id));
  for (const auto& j : jumps) {
    const SparseMatrix ldl = SparseMatrix(j.op.data.adjoint()) * j.op.data;
    l += j.rate * (2.0 * kron(SparseMatrix(j.op.data.conjugate()), j.op.data) - kron(id, ldl) -
                   kron(SparseMatrix(ldl.transpose()), id));
  }
  l.prune(cplx(0.0));
  return l;
}

NullSpaceResult null_space_steady_state(const Operator& h, const std::vector<Jump>& jumps) {
  const Index d = h.dimension();
  SparseMatrix l = vectorized_liouvillian(h, jumps);
  double scale = 0.0;
  for (Index k = 0; k < l.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(l, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  // No eigenvalue of a Lindbladian has positive real part, so a small
  // positive shift keeps the matrix regular while 0 dominates the inverse.
  const double sigma = 1e-9 * (1.0 + scale);
  SparseMatrix m = l - sigma * sparse_identity(d * d);
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success)
    throw SteadyStateError("null_space_steady_state: factorisation failed", 0.0, 0.0);

  auto iterate = [&](Eigen::VectorXcd x) {
    for (int it = 0; it < 4; ++it) {
      x = lu.solve(x);
      x.normalize();
    }
    return unvec(x, d);
  };
  Eigen::VectorXcd start1 = Eigen::VectorXcd::Zero(d * d);
  Eigen::VectorXcd start2 = Eigen::VectorXcd::Zero(d * d);
  std::mt19937_64 rng(20240517);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  for (Index k = 0; k < d; ++k) {
    start1(k * d + k) = 1.0;
    start2(k * d + k) = uni(rng);
  }
  NullSpaceResult res;
  res.rho = DensityState{h.dims, iterate(start1)};
  const DensityState other{h.dims, iterate(start2)};
  res.degenerate = trace_distance(res.rho, other) > 1e-6;
  res.residual = lindblad_rhs(h, jumps, res.rho.data).cwiseAbs().maxCoeff();
  return res;
}

SteadyStateResult steady_state(const Operator& h, const LatticeSpec& spec, double kappa,
                               const SteadyStateOptions& opts) {
  return steady_state(h, spec, kappa, opts, initial_state(spec));
}

SteadyStateResult steady_state(const Operator& h, const LatticeSpec& spec, double kappa,
                               const SteadyStateOptions& opts, const DensityState& rho0) {
  opts.validate();
  if (!(kappa > 0.0)) throw std::invalid_argument("steady_state: kappa must be positive");
  if (h.dims != spec.dims() || rho0.dims != spec.dims())
    throw std::invalid_argument("steady_state: state, Hamiltonian and lattice dims differ");

  const auto jumps = cavity_jumps(spec, kappa);
  BlockLindblad engine(BlockPartition::invariant(h, jumps, rho0.data), h, jumps);
  BlockDensity y = gather(engine.partition(), rho0.data);
  const cplx trace0 = y.trace();
  auto rhs = [&engine](const BlockDensity& in, BlockDensity& out) { engine.apply(in, out); };
  DormandPrince<BlockDensity, decltype(rhs)> stepper(rhs, opts.rel_tol, opts.abs_tol, 1e-3,
                                                      1e-12 * opts.t_max);
  auto on_accept = [&](double t, BlockDensity& s) {
    s.hermitize();
    const double drift = std::abs(s.trace() - trace0);
    if (drift > opts.max_trace_drift)
      throw EvolutionError("steady_state: trace drift " + format_double(drift) + " at t=" +
                           format_double(t));
  };

  SteadyStateResult res;
  res.method = "long-time";
  res.blocks = engine.partition().size();
  const double window = 1.0 / kappa;
  double t = 0.0;
  BlockDensity prev = y;
  while (true) {
    if (t >= opts.t_max) {
      const double r = engine.apply(y).max_abs();
      throw SteadyStateError("steady_state: no convergence by t=" + format_double(t) +
                                 ", residual " + format_double(r),
                             r, t);
    }
    prev = y;
    stepper.integrate(y, t, std::min(opts.t_max, t + window), on_accept);
    ++res.windows;
    if (max_abs_difference(y, prev) < opts.change_tolerance) {
      res.residual = engine.apply(y).max_abs();
      if (res.residual <= opts.residual_tolerance) break;
    }
  }
  res.time = t;
  res.accepted_steps = stepper.stats().accepted;
  res.rho = DensityState{spec.dims(), scatter(engine.partition(), y)};
  res.truncation = check_truncation(res.rho, spec);

  if (spec.atom_dim() > 1 && conserves_photon_number(h, spec)) {
    res.degenerate = true;
    res.degeneracy_note = "photon number is conserved: every atom state with empty modes is stationary";
  }
  if (spec.dimension() <= opts.cross_check_max_dim) {
    const NullSpaceResult ns = null_space_steady_state(h, jumps);
    res.cross_check_distance = trace_distance(res.rho, ns.rho);
    if (ns.degenerate) {
      res.degenerate = true;
      if (res.degeneracy_note.empty()) res.degeneracy_note = "null space of the generator is degenerate";
    } else if (*res.cross_check_distance > opts.agreement_tolerance) {
      throw SteadyStateError("steady_state: long-time and null-space solutions differ by " +
                                 format_double(*res.cross_check_distance),
                             res.residual, t);
    }
  }
  return res;
}

DensityState resize_state(const DensityState& rho, const LatticeSpec& from, const LatticeSpec& to) {
  if (!(from.angle() == to.angle()))
    throw std::invalid_argument("resize_state: lattices have different angles");
  if (rho.dims != from.dims()) throw std::invalid_argument("resize_state: dims mismatch");
  const Index n = rho.dimension();
  std::vector<Index> map(static_cast<std::size_t>(n), -1);
  for (Index f = 0; f < n; ++f) {
    const auto idx = unflatten(f, rho.dims);
    const int label = from.momentum_label(idx[0]);
    if (std::abs(label) <= to.n_max() && idx[1] <= to.cutoff_plus() && idx[2] <= to.cutoff_minus())
      map[static_cast<std::size_t>(f)] = to.basis_index(label, idx[1], idx[2]);
  }
  DenseMatrix out = DenseMatrix::Zero(to.dimension(), to.dimension());
  for (Index c = 0; c < n; ++c) {
    const Index mc = map[static_cast<std::size_t>(c)];
    if (mc < 0) continue;
    for (Index r = 0; r < n; ++r) {
      const Index mr = map[static_cast<std::size_t>(r)];
      if (mr >= 0) out(mr, mc) = rho.data(r, c);
    }
  }
  const cplx tr = out.trace();
  if (std::abs(tr) == 0.0) throw std::invalid_argument("resize_state: no overlap between lattices");
  return DensityState{to.dims(), out / tr};
}

}  // namespace ringcav
