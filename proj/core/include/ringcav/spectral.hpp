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

#include <memory>
#include <span>
#include <vector>

#include "ringcav/hilbert.hpp"

namespace ringcav {

/// One-dimensional complex FFT of a fixed length. forward() is unnormalised,
/// backward() divides by n so that backward(forward(x)) == x.
///
/// Plans are created under a global lock; execution is thread-safe across
/// instances but a single instance must not be used concurrently.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }
  void forward(std::span<const cplx> in, std::span<cplx> out);
  void backward(std::span<const cplx> in, std::span<cplx> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

/// Integer wave numbers in FFT order: 0, 1, ..., n/2 - 1, -n/2, ..., -1.
std::vector<int> fft_frequencies(int n);

bool is_power_of_two(int n);

}  // namespace ringcav
