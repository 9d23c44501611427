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

#include "ringcav/effective_potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "ringcav/csv.hpp"
#include "ringcav/spectral.hpp"

namespace ringcav {

Eigen::VectorXd build_v_quant(double mag_plus, double mag_minus, double phase_plus,
                              double phase_minus, const PhysicalParams& params, int n_grid) {
  if (!(mag_plus >= 0.0) || !(mag_minus >= 0.0))
    throw std::invalid_argument("build_v_quant: field magnitudes must be non-negative");
  return optical_potential(params.angle, n_grid, std::polar(mag_plus, phase_plus),
                           std::polar(mag_minus, phase_minus), params.eta, params.u0);
}

namespace {

void check_grid(const Eigen::VectorXd& potential) {
  const auto n = static_cast<int>(potential.size());
  if (!is_power_of_two(n) || n < 4)
    throw std::invalid_argument("ground_state: grid size must be a power of two >= 4");
  if (!potential.allFinite()) throw std::invalid_argument("ground_state: non-finite potential");
}

std::vector<double> kinetic_diagonal(int n, double q) {
  std::vector<double> t;
  for (int k : fft_frequencies(n)) t.push_back(k * q * k * q);
  return t;
}

BrokenSymmetryState finish(const RationalAngle& angle, Eigen::VectorXcd psi, double energy,
                           std::string method) {
  const double len = CellGeometry::of(angle).length;
  const double dx = len / static_cast<double>(psi.size());
  psi /= std::sqrt(psi.squaredNorm() * dx);
  // The ground state of a real Hamiltonian is real and nodeless up to a phase.
  const cplx s = psi.sum();
  if (std::abs(s) > 0.0) psi *= std::conj(s) / std::abs(s);
  BrokenSymmetryState st;
  st.angle = angle;
  st.energy = energy;
  const auto o = order_parameters(angle, {psi.data(), static_cast<std::size_t>(psi.size())}, len);
  st.theta_plus = o.theta_plus;
  st.theta_minus = o.theta_minus;
  st.psi = std::move(psi);
  st.method = std::move(method);
  return st;
}

BrokenSymmetryState dense_ground_state(const Eigen::VectorXd& v, const RationalAngle& angle) {
  const auto n = static_cast<int>(v.size());
  const double q = CellGeometry::of(angle).momentum_quantum;
  const auto t = kinetic_diagonal(n, q);
  // Circulant kinetic matrix: c[m] = (1/N) sum_k p_k^2 cos(2 pi k m / N).
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  const auto freq = fft_frequencies(n);
  for (int m = 0; m < n; ++m) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const long km = (static_cast<long>(freq[static_cast<std::size_t>(i)]) * m) % n;
      s += t[static_cast<std::size_t>(i)] * std::cos(2.0 * std::numbers::pi * static_cast<double>(km) / n);
    }
    c[static_cast<std::size_t>(m)] = s / n;
  }
  Eigen::MatrixXd h(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) h(j, l) = c[static_cast<std::size_t>(((j - l) % n + n) % n)];
  h.diagonal() += v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw GroundStateError("ground_state: eigensolver failed");
  return finish(angle, es.eigenvectors().col(0).cast<cplx>(), es.eigenvalues()(0), "dense");
}

BrokenSymmetryState sparse_ground_state(const Eigen::VectorXd& v, const RationalAngle& angle) {
  const auto n = static_cast<int>(v.size());
  const double q = CellGeometry::of(angle).momentum_quantum;
  const auto t = kinetic_diagonal(n, q);
  Fft fft(n);
  std::vector<cplx> vin(v.data(), v.data() + n), vhat(static_cast<std::size_t>(n));
  fft.forward(vin, vhat);
  double vmax = 0.0;
  for (auto& z : vhat) {
    z /= static_cast<double>(n);
    vmax = std::max(vmax, std::abs(z));
  }
  // H_{k k'} = p_k^2 delta + Vhat_{k - k'} in FFT index space.
  const double shift = v.minCoeff() - 1.0;
  std::vector<Triplet> trip;
  std::vector<int> harmonics;
  for (int m = 0; m < n; ++m)
    if (std::abs(vhat[static_cast<std::size_t>(m)]) > 1e-15 * (1.0 + vmax)) harmonics.push_back(m);
  for (int k = 0; k < n; ++k) {
    trip.emplace_back(k, k, t[static_cast<std::size_t>(k)] - shift);
    for (int m : harmonics) trip.emplace_back((k + m) % n, k, vhat[static_cast<std::size_t>(m)]);
  }
  SparseMatrix h(n, n);
  h.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(h);
  if (lu.info() != Eigen::Success) throw GroundStateError("ground_state: factorisation failed");

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  x(0) = 1.0;
  double lambda = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd y = lu.solve(x);
    y.normalize();
    const double next = (y.dot(h * y)).real() + shift;
    x = y;
    if (std::abs(next - lambda) < 1e-14 * (1.0 + std::abs(next))) {
      std::vector<cplx> psi(static_cast<std::size_t>(n));
      fft.backward({x.data(), static_cast<std::size_t>(n)}, psi);
      Eigen::VectorXcd out = Eigen::Map<Eigen::VectorXcd>(psi.data(), n);
      return finish(angle, out, next, "inverse-iteration");
    }
    lambda = next;
  }
  throw GroundStateError("ground_state: inverse iteration did not converge");
}

}  // namespace

BrokenSymmetryState ground_state(const Eigen::VectorXd& potential, const RationalAngle& angle) {
  check_grid(potential);
  return potential.size() <= kDenseGroundStateLimit ? dense_ground_state(potential, angle)
                                                    : sparse_ground_state(potential, angle);
}

double grid_energy(const Eigen::VectorXd& potential, const RationalAngle& angle,
                   const Eigen::VectorXcd& psi) {
  const auto n = static_cast<int>(psi.size());
  if (potential.size() != n) throw std::invalid_argument("grid_energy: size mismatch");
  const auto t = kinetic_diagonal(n, CellGeometry::of(angle).momentum_quantum);
  Fft fft(n);
  std::vector<cplx> hat(static_cast<std::size_t>(n));
  fft.forward({psi.data(), static_cast<std::size_t>(n)}, hat);
  double kin = 0.0, spec_norm = 0.0;
  for (int k = 0; k < n; ++k) {
    kin += t[static_cast<std::size_t>(k)] * std::norm(hat[static_cast<std::size_t>(k)]);
    spec_norm += std::norm(hat[static_cast<std::size_t>(k)]);
  }
  double pot = 0.0;
  for (int j = 0; j < n; ++j) pot += potential(j) * std::norm(psi(j));
  return kin / spec_norm + pot / psi.squaredNorm();
}

BrokenSymmetryState imaginary_time_ground_state(const Eigen::VectorXd& potential,
                                                const RationalAngle& angle, double energy_tol,
                                                long max_steps_per_stage) {
  check_grid(potential);
  const auto n = static_cast<int>(potential.size());
  const auto t = kinetic_diagonal(n, CellGeometry::of(angle).momentum_quantum);
  Fft fft(n);
  std::vector<cplx> psi(static_cast<std::size_t>(n), cplx(1.0)), hat(static_cast<std::size_t>(n));
  auto as_vector = [&] { return Eigen::Map<Eigen::VectorXcd>(psi.data(), n); };
  double energy = grid_energy(potential, angle, as_vector());
  for (double dt : {1e-2, 2.5e-3, 6e-4}) {
    std::vector<double> half_kin, pot;
    for (double tk : t) half_kin.push_back(std::exp(-0.5 * dt * tk));
    // Shift by the minimum so the factors stay bounded in deep wells.
    const double vmin = potential.minCoeff();
    for (int j = 0; j < n; ++j) pot.push_back(std::exp(-dt * (potential(j) - vmin)));
    const long check = std::max(1L, std::lround(0.05 / dt));
    bool converged = false;
    for (long s = 1; s <= max_steps_per_stage; ++s) {
      fft.forward(psi, hat);
      for (int k = 0; k < n; ++k) hat[static_cast<std::size_t>(k)] *= half_kin[static_cast<std::size_t>(k)];
      fft.backward(hat, psi);
      for (int j = 0; j < n; ++j) psi[static_cast<std::size_t>(j)] *= pot[static_cast<std::size_t>(j)];
      fft.forward(psi, hat);
      for (int k = 0; k < n; ++k) hat[static_cast<std::size_t>(k)] *= half_kin[static_cast<std::size_t>(k)];
      fft.backward(hat, psi);
      const double norm = as_vector().norm();
      for (auto& z : psi) z /= norm;
      if (s % check == 0) {
        const double e = grid_energy(potential, angle, as_vector());
        const bool done = std::abs(e - energy) < energy_tol * (1.0 + std::abs(e));
        energy = e;
        if (done) {
          converged = true;
          break;
        }
      }
    }
    if (!converged)
      throw GroundStateError("imaginary_time_ground_state: stage with dt=" + format_double(dt) +
                             " did not converge");
  }
  return finish(angle, as_vector(), energy, "imaginary-time");
}

}  // namespace ringcav
