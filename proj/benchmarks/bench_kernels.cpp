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

// Microbenchmarks of the hot kernels: the Lindblad right-hand side, the
// Wigner grid, one split-step of the mean-field model and the effective
// potential ground state.

#include <benchmark/benchmark.h>

#include "ringcav/block_lindblad.hpp"
#include "ringcav/effective_potential.hpp"
#include "ringcav/meanfield.hpp"
#include "ringcav/model.hpp"
#include "ringcav/observables.hpp"
#include "ringcav/quantum_dynamics.hpp"

namespace {

using namespace ringcav;

const RationalAngle kHalf(1, 2);
const PhysicalParams kParams{12.0, -1.0, -10.0, 10.0, kHalf};

void BM_BlockLindbladApply(benchmark::State& state) {
  const auto spec = make_lattice(kHalf, static_cast<int>(state.range(0)), 8, 6);
  const Operator h = build_hamiltonian(spec, kParams);
  const auto jumps = cavity_jumps(spec, kParams.kappa);
  const DensityState rho0 = initial_state(spec);
  const BlockLindblad engine(BlockPartition::invariant(h, jumps, rho0.data), h, jumps);
  const BlockDensity in = gather(engine.partition(), rho0.data);
  BlockDensity out = zeros_like(in);
  for (auto _ : state) {
    engine.apply(in, out);
    benchmark::DoNotOptimize(out.blocks.data());
  }
  state.counters["dimension"] = static_cast<double>(spec.dimension());
  state.counters["blocks"] = static_cast<double>(engine.partition().size());
}
BENCHMARK(BM_BlockLindbladApply)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const DensityState rho = phase_averaged_coherent_state(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_default(rho).values.data());
}
BENCHMARK(BM_WignerGrid)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MeanFieldStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MeanFieldState s = make_meanfield_state(kHalf, n, cplx(0.3, 0.1), cplx(0.1, -0.2));
  MeanFieldPropagator prop(kParams, n, 1e-3);
  for (auto _ : state) {
    prop.step(s);
    benchmark::DoNotOptimize(s.psi.data());
  }
}
BENCHMARK(BM_MeanFieldStep)->Arg(256)->Arg(1024)->Arg(4096);

void BM_GroundState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::VectorXd v = build_v_quant(0.9, 0.3, 0.0, 0.0, kParams, n);
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(v, kHalf).energy);
}
BENCHMARK(BM_GroundState)->Arg(128)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
