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

#include <random>

#include "ringcav/hilbert.hpp"

namespace ringcav::testing {

/// Random full-rank density matrix G G^dag / Tr.
inline DensityState random_density(const Dims& dims, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Index n = total_dimension(dims);
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  DenseMatrix rho = m * m.adjoint();
  rho /= rho.trace();
  return DensityState{dims, rho};
}

inline Eigen::VectorXcd random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

inline double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ringcav::testing
