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

#include "ringcav/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ringcav {

DensityState partial_trace(const DensityState& rho, std::span<const int> keep) {
  const Dims& dims = rho.dims;
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()) || kept[static_cast<std::size_t>(k)])
      throw std::invalid_argument("partial_trace: invalid subsystem list");
    kept[static_cast<std::size_t>(k)] = true;
  }
  Dims kdims, tdims;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kdims : tdims).push_back(dims[s]);
  const Index kdim = total_dimension(kdims);
  const Index tdim = total_dimension(tdims);

  // Group full indices by their traced-out part.
  std::vector<std::vector<std::pair<Index, Index>>> by_traced(static_cast<std::size_t>(tdim));
  std::vector<int> ki, ti;
  for (Index f = 0; f < rho.dimension(); ++f) {
    const auto idx = unflatten(f, dims);
    ki.clear();
    ti.clear();
    for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? ki : ti).push_back(idx[s]);
    by_traced[static_cast<std::size_t>(flatten(ti, tdims))].emplace_back(f, flatten(ki, kdims));
  }
  DenseMatrix out = DenseMatrix::Zero(kdim, kdim);
  for (const auto& group : by_traced)
    for (const auto& [fc, kc] : group)
      for (const auto& [fr, kr] : group) out(kr, kc) += rho.data(fr, fc);
  return DensityState{kdims, out};
}

DensityState partial_trace(const DensityState& rho, std::initializer_list<Subsystem> keep) {
  std::vector<int> k;
  for (Subsystem s : keep) k.push_back(static_cast<int>(s));
  return partial_trace(rho, k);
}

DenseMatrix partial_transpose(const DensityState& rho, int subsystem) {
  const Dims& dims = rho.dims;
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw std::invalid_argument("partial_transpose: invalid subsystem");
  const Index n = rho.dimension();
  // Stride of the transposed subsystem in the flat index.
  Index stride = 1;
  for (std::size_t s = static_cast<std::size_t>(subsystem) + 1; s < dims.size(); ++s)
    stride *= dims[s];
  const Index d = dims[static_cast<std::size_t>(subsystem)];
  DenseMatrix out(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index cs = (c / stride) % d;
    for (Index r = 0; r < n; ++r) {
      const Index rs = (r / stride) % d;
      out(r, c) = rho.data(r + (cs - rs) * stride, c + (rs - cs) * stride);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const DenseMatrix& m) {
  const Index n = m.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Index c = 0; c < n; ++c)
    for (Index r = c + 1; r < n; ++r)
      if (m(r, c) != cplx(0.0) || m(c, r) != cplx(0.0)) {
        const Index a = find(r), b = find(c);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
  std::map<Index, std::vector<Index>> comps;
  for (Index i = 0; i < n; ++i) comps[find(i)].push_back(i);

  std::vector<double> evals;
  evals.reserve(static_cast<std::size_t>(n));
  for (const auto& [root, idx] : comps) {
    const auto k = static_cast<Index>(idx.size());
    if (k == 1) {
      evals.push_back(m(idx[0], idx[0]).real());
      continue;
    }
    DenseMatrix sub(k, k);
    for (Index c = 0; c < k; ++c)
      for (Index r = 0; r < k; ++r)
        sub(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sub, Eigen::EigenvaluesOnly);
    for (Index i = 0; i < k; ++i) evals.push_back(es.eigenvalues()(i));
  }
  std::sort(evals.begin(), evals.end());
  return evals;
}

double min_eigenvalue(const DensityState& rho) {
  const auto ev = hermitian_eigenvalues(rho.data);
  return ev.empty() ? 0.0 : ev.front();
}

double trace_distance(const DensityState& a, const DensityState& b) {
  if (a.dims != b.dims) throw std::invalid_argument("trace_distance: dims mismatch");
  double s = 0.0;
  for (double e : hermitian_eigenvalues(a.data - b.data)) s += std::abs(e);
  return 0.5 * s;
}

double log_negativity(const DensityState& rho) {
  if (rho.dims.size() < 2) throw std::invalid_argument("log_negativity: needs a bipartition");
  const auto ev = hermitian_eigenvalues(partial_transpose(rho, 0));
  double norm = 0.0;
  for (double e : ev) norm += std::abs(e);
  return std::max(0.0, std::log2(norm));
}

cplx expectation(const DensityState& rho, const Operator& op) {
  if (op.dimension() != rho.dimension())
    throw std::invalid_argument("expectation: dimension mismatch");
  cplx s = 0.0;
  for (Index k = 0; k < op.data.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(op.data, k); it; ++it)
      s += it.value() * rho.data(it.col(), it.row());
  return s;
}

std::vector<double> photon_distribution(const DensityState& rho, Subsystem mode) {
  const auto s = static_cast<std::size_t>(mode);
  if (s >= rho.dims.size()) throw std::invalid_argument("photon_distribution: no such mode");
  std::vector<double> p(static_cast<std::size_t>(rho.dims[s]), 0.0);
  for (Index f = 0; f < rho.dimension(); ++f)
    p[static_cast<std::size_t>(unflatten(f, rho.dims)[s])] += rho.data(f, f).real();
  return p;
}

bool is_passive(std::span<const double> p, double tol) {
  for (std::size_t n = 0; n + 1 < p.size(); ++n)
    if (p[n + 1] > p[n] + tol) return false;
  return true;
}

MomentumStats momentum_stats(const DensityState& rho, const LatticeSpec& spec) {
  if (rho.dims != spec.dims()) throw std::invalid_argument("momentum_stats: dims mismatch");
  MomentumStats st;
  const int na = spec.atom_dim();
  st.distribution.assign(static_cast<std::size_t>(na), 0.0);
  const Index per_atom = rho.dimension() / na;
  for (Index f = 0; f < rho.dimension(); ++f)
    st.distribution[static_cast<std::size_t>(f / per_atom)] += rho.data(f, f).real();
  for (int i = 0; i < na; ++i) {
    st.labels.push_back(spec.momentum_label(i));
    st.momenta.push_back(spec.momentum_label(i) * spec.momentum_quantum());
    st.mean += st.momenta.back() * st.distribution[static_cast<std::size_t>(i)];
  }
  return st;
}

DensityState phase_averaged_coherent_state(double lambda, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("phase_averaged_coherent_state: negative cutoff");
  DenseMatrix m = DenseMatrix::Zero(cutoff + 1, cutoff + 1);
  double p = std::exp(-lambda * lambda);
  for (int n = 0; n <= cutoff; ++n) {
    m(n, n) = p;
    p *= lambda * lambda / (n + 1);
  }
  return DensityState{{cutoff + 1}, m};
}

std::vector<double> symmetric_axis(double extent, int points) {
  if (points < 2 || !(extent > 0.0)) throw std::invalid_argument("symmetric_axis: bad grid");
  std::vector<double> axis(static_cast<std::size_t>(points));
  const double step = 2.0 * extent / (points - 1);
  const int mid = (points - 1) / 2;
  for (int i = 0; i < points; ++i) {
    // Measure from the centre so that odd grids hit 0 exactly and are mirror
    // symmetric bit for bit.
    axis[static_cast<std::size_t>(i)] =
        (points % 2 == 1) ? (i - mid) * step : -extent + i * step;
  }
  return axis;
}

namespace {

// sum_n (-1)^n [rho_nn D_nn + 2 sum_{m>n} Re(rho_nm D_mn)] with D = D(beta).
double parity_kernel_sum(const DenseMatrix& rho, cplx beta) {
  const int dim = static_cast<int>(rho.rows());
  const double x = std::norm(beta);
  const double gauss = std::exp(-0.5 * x);
  double total = 0.0;
  std::vector<double> lag(static_cast<std::size_t>(dim));
  // prefactor(n, d) = sqrt(n!/(n+d)!) beta^d, built incrementally in d.
  std::vector<cplx> pref(static_cast<std::size_t>(dim), cplx(1.0));
  for (int d = 0; d < dim; ++d) {
    const int nmax = dim - 1 - d;
    if (d > 0)
      for (int n = 0; n <= nmax; ++n)
        pref[static_cast<std::size_t>(n)] *= beta / std::sqrt(static_cast<double>(n + d));
    lag[0] = 1.0;
    if (nmax >= 1) lag[1] = 1.0 + d - x;
    for (int n = 1; n < nmax; ++n)
      lag[static_cast<std::size_t>(n + 1)] =
          ((2.0 * n + 1.0 + d - x) * lag[static_cast<std::size_t>(n)] -
           (n + d) * lag[static_cast<std::size_t>(n - 1)]) /
          (n + 1.0);
    for (int n = 0; n <= nmax; ++n) {
      const cplx dmn = pref[static_cast<std::size_t>(n)] * gauss * lag[static_cast<std::size_t>(n)];
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      if (d == 0)
        total += sign * (rho(n, n) * dmn).real();
      else
        total += 2.0 * sign * (rho(n, n + d) * dmn).real();
    }
  }
  return total;
}

}  // namespace

WignerGrid wigner(const DensityState& rho_mode, std::span<const double> re_axis,
                  std::span<const double> im_axis, std::string mode_tag) {
  if (rho_mode.dims.size() != 1 || rho_mode.data.rows() != rho_mode.data.cols())
    throw std::invalid_argument("wigner: expects a single-mode density matrix");
  WignerGrid w;
  w.re_axis.assign(re_axis.begin(), re_axis.end());
  w.im_axis.assign(im_axis.begin(), im_axis.end());
  w.mode_tag = std::move(mode_tag);
  const Index top = rho_mode.dimension() - 1;
  w.tail_population = rho_mode.data(top, top).real();
  w.tail_flag = w.tail_population > 1e-6;
  w.values.resize(static_cast<Index>(re_axis.size()), static_cast<Index>(im_axis.size()));
  for (std::size_t i = 0; i < re_axis.size(); ++i)
    for (std::size_t j = 0; j < im_axis.size(); ++j) {
      const cplx alpha(re_axis[i], im_axis[j]);
      w.values(static_cast<Index>(i), static_cast<Index>(j)) =
          (2.0 / std::numbers::pi) * parity_kernel_sum(rho_mode.data, 2.0 * alpha);
    }
  return w;
}

WignerGrid wigner_default(const DensityState& rho_mode, std::string mode_tag, int points) {
  const int cutoff = static_cast<int>(rho_mode.dimension()) - 1;
  const double extent = std::max(3.0, 2.0 * std::sqrt(static_cast<double>(cutoff)));
  const auto axis = symmetric_axis(extent, points);
  return wigner(rho_mode, axis, axis, std::move(mode_tag));
}

FieldExtraction extract_field(const WignerGrid& w, double threshold) {
  const auto nr = static_cast<Index>(w.re_axis.size());
  const auto ni = static_cast<Index>(w.im_axis.size());
  if (nr < 3 || ni < 3 || nr % 2 == 0 || ni % 2 == 0)
    throw std::invalid_argument("extract_field: grid needs an odd number of points per axis");
  const Index cr = nr / 2, ci = ni / 2;
  const double step = w.re_axis[1] - w.re_axis[0];
  const double step_im = w.im_axis[1] - w.im_axis[0];
  if (w.re_axis[static_cast<std::size_t>(cr)] != 0.0 ||
      w.im_axis[static_cast<std::size_t>(ci)] != 0.0 ||
      std::abs(step - step_im) > 1e-12 * std::abs(step))
    throw std::invalid_argument("extract_field: grid must be centred with equal spacing");

  const double wmax = w.values.cwiseAbs().maxCoeff();
  double boundary = 0.0;
  for (Index i = 0; i < nr; ++i)
    boundary = std::max({boundary, std::abs(w.values(i, 0)), std::abs(w.values(i, ni - 1))});
  for (Index j = 0; j < ni; ++j)
    boundary = std::max({boundary, std::abs(w.values(0, j)), std::abs(w.values(nr - 1, j))});
  if (boundary >= 1e-4 * wmax)
    throw std::domain_error("extract_field: Wigner function not contained in the grid");

  FieldExtraction fe;
  const Index nrad = std::min(cr, ci) + 1;
  for (Index k = 0; k < nrad; ++k) {
    const double v = 0.25 * (w.values(cr + k, ci) + w.values(cr - k, ci) +
                             w.values(cr, ci + k) + w.values(cr, ci - k));
    fe.radii.push_back(k * step);
    fe.radial_profile.push_back(v);
  }
  for (Index i = 0; i < nr; ++i) fe.cut.push_back(w.values(i, ci));

  const auto& prof = fe.radial_profile;
  const auto kmax = static_cast<std::size_t>(
      std::max_element(prof.begin(), prof.end()) - prof.begin());
  const double peak = prof[kmax];
  fe.contrast = peak > 0.0 ? (peak - prof[0]) / peak : 0.0;
  fe.is_annulus = kmax >= 2 && fe.contrast >= threshold;
  if (fe.is_annulus) {
    double r = fe.radii[kmax];
    if (kmax + 1 < prof.size()) {
      // Parabolic refinement through the three samples around the peak.
      const double a = prof[kmax - 1], b = prof[kmax], c = prof[kmax + 1];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) r += 0.5 * step * (a - c) / denom;
    }
    fe.magnitude = r;
  }
  return fe;
}

}  // namespace ringcav
