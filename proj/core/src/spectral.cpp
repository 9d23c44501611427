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

#include "ringcav/spectral.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace ringcav {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    if (buf == nullptr) throw std::bad_alloc();
    // FFTW_ESTIMATE keeps plans (and therefore results) independent of timing.
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

Fft::Fft(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Fft: length must be positive");
  impl_ = std::make_unique<Impl>(n);
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_)
    throw std::invalid_argument("Fft::forward: length mismatch");
  auto* b = reinterpret_cast<cplx*>(impl_->buf);
  std::copy(in.begin(), in.end(), b);
  fftw_execute(impl_->fwd);
  std::copy(b, b + n_, out.begin());
}

void Fft::backward(std::span<const cplx> in, std::span<cplx> out) {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_)
    throw std::invalid_argument("Fft::backward: length mismatch");
  auto* b = reinterpret_cast<cplx*>(impl_->buf);
  std::copy(in.begin(), in.end(), b);
  fftw_execute(impl_->bwd);
  const double s = 1.0 / n_;
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = b[i] * s;
}

std::vector<int> fft_frequencies(int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = (i < (n + 1) / 2) ? i : i - n;
  return k;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace ringcav
