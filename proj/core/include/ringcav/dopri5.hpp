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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <sstream>
#include <string>

namespace ringcav {

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepperStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_calls = 0;
};

/// Dormand-Prince 5(4) with FSAL and elementwise mixed error control.
///
/// State needs copy construction plus the free functions
///   axpy(State& y, double a, const State& x)
///   scaled_error(const State& err, const State& y0, const State& y1, double atol, double rtol)
///   zeros_like(const State&)
///   set_zero(State&)
/// Rhs is callable as rhs(const State& y, State& dydt).
template <class State, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, double rel_tol, double abs_tol, double h0, double h_min)
      : rhs_(std::move(rhs)), rtol_(rel_tol), atol_(abs_tol), h_(h0), h_min_(h_min) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(h0 > 0.0))
      throw std::invalid_argument("DormandPrince: tolerances and h0 must be positive");
  }

  /// Advance y from t to t_end, landing exactly on t_end. on_accept(t, y) runs
  /// after every accepted step and may modify y in place.
  template <class OnAccept>
  void integrate(State& y, double& t, double t_end, OnAccept&& on_accept) {
    if (!(t_end > t)) return;
    if (!fsal_valid_) {
      if (!allocated_) allocate(y);
      rhs_(y, k_[0]);
      ++stats_.rhs_calls;
      fsal_valid_ = true;
    }
    while (t < t_end) {
      const double remaining = t_end - t;
      bool last = false;
      double h = h_;
      if (h >= remaining * (1.0 - 1e-12)) {
        h = remaining;
        last = true;
      }
      if (h < h_min_ && !last) {
        std::ostringstream msg;
        msg << "DormandPrince: step size " << h << " below minimum at t=" << t;
        throw StepSizeUnderflow(msg.str());
      }

      stage(y, h);
      const double err = scaled_error(err_, y, ynew_, atol_, rtol_);
      if (!std::isfinite(err)) {
        ++stats_.rejected;
        h_ = 0.2 * h;
        continue;
      }
      if (err <= 1.0) {
        ++stats_.accepted;
        t = last ? t_end : t + h;
        std::swap(y, ynew_);
        std::swap(k_[0], k_[6]);
        on_accept(t, y);
        const double fac =
            err == 0.0 ? kMaxGrow : std::clamp(0.9 * std::pow(err, -0.2), kMinShrink, kMaxGrow);
        // Keep the controller's step when the last step was clipped to hit t_end.
        h_ = last ? std::max(h_, h * fac) : h * fac;
      } else {
        ++stats_.rejected;
        h_ = h * std::clamp(0.9 * std::pow(err, -0.2), kMinShrink, 1.0);
      }
    }
  }

  /// Call after y has been changed outside integrate().
  void invalidate() { fsal_valid_ = false; }
  double step_size() const { return h_; }
  const StepperStats& stats() const { return stats_; }

 private:
  static constexpr double kMaxGrow = 5.0;
  static constexpr double kMinShrink = 0.2;

  void allocate(const State& y) {
    for (auto& k : k_) k = zeros_like(y);
    tmp_ = zeros_like(y);
    ynew_ = zeros_like(y);
    err_ = zeros_like(y);
    allocated_ = true;
  }

  void combine(State& out, const State& y, double h, std::size_t stages,
               const double* coeff) {
    out = y;
    for (std::size_t s = 0; s < stages; ++s)
      if (coeff[s] != 0.0) axpy(out, h * coeff[s], k_[s]);
  }

  void stage(const State& y, double h) {
    static constexpr double a2[] = {1.0 / 5};
    static constexpr double a3[] = {3.0 / 40, 9.0 / 40};
    static constexpr double a4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
    static constexpr double a5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                                    -212.0 / 729};
    static constexpr double a6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                                    -5103.0 / 18656};
    static constexpr double b[] = {35.0 / 384,     0.0, 500.0 / 1113, 125.0 / 192,
                                   -2187.0 / 6784, 11.0 / 84};
    static constexpr double e[] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

    combine(tmp_, y, h, 1, a2);
    rhs_(tmp_, k_[1]);
    combine(tmp_, y, h, 2, a3);
    rhs_(tmp_, k_[2]);
    combine(tmp_, y, h, 3, a4);
    rhs_(tmp_, k_[3]);
    combine(tmp_, y, h, 4, a5);
    rhs_(tmp_, k_[4]);
    combine(tmp_, y, h, 5, a6);
    rhs_(tmp_, k_[5]);
    combine(ynew_, y, h, 6, b);
    rhs_(ynew_, k_[6]);
    stats_.rhs_calls += 6;

    set_zero(err_);
    for (std::size_t s = 0; s < 7; ++s)
      if (e[s] != 0.0) axpy(err_, h * e[s], k_[s]);
  }

  Rhs rhs_;
  double rtol_;
  double atol_;
  double h_;
  double h_min_;
  bool fsal_valid_ = false;
  bool allocated_ = false;
  std::array<State, 7> k_;
  State tmp_;
  State ynew_;
  State err_;
  StepperStats stats_;
};

}  // namespace ringcav
