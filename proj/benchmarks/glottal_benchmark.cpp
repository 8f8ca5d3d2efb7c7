// Copyright 2026 The Glottal Authors
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


// Micro-benchmarks of the analysis stages and of a full one-second LPCC run.

#include <benchmark/benchmark.h>

#include <random>

#include "glottal/cepstrum.hpp"
#include "glottal/eval.hpp"
#include "glottal/lf.hpp"
#include "glottal/lp.hpp"
#include "glottal/pipeline.hpp"

namespace {

using namespace glottal;

constexpr double kRate = 16000.0;

Frame noise_frame(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Frame f;
  f.rate = kRate;
  for (std::size_t i = 0; i < n; ++i) f.samples.push_back(d(rng));
  return f;
}

SynthOutput one_second_vowel() {
  SynthSpec spec;
  spec.lf = sweep_lf_params(0.6, 120.0);
  spec.f0_track = {120.0};
  spec.formants = default_formants();
  spec.n_periods = 120;
  return synth_voice(spec);
}

void BM_ComplexCepstrum(benchmark::State& state) {
  const auto frame = noise_frame(160, 1);
  const auto nfft = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(complex_cepstrum(frame, nfft));
}
BENCHMARK(BM_ComplexCepstrum)->Arg(1024)->Arg(2048)->Arg(4096);

void BM_CovarianceLpAndPoles(benchmark::State& state) {
  const auto frame = noise_frame(400, 2);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_poles(covariance_lp(frame, order)));
}
BENCHMARK(BM_CovarianceLpAndPoles)->Arg(19)->Arg(31);

void BM_LfFit(benchmark::State& state) {
  const auto p = sweep_lf_params(0.6, 120.0);
  const auto pulse = lf_synthesize(p, kRate);
  for (auto _ : state) benchmark::DoNotOptimize(lf_fit(pulse, 120.0));
}
BENCHMARK(BM_LfFit)->Unit(benchmark::kMillisecond);

void BM_LpccOneSecond(benchmark::State& state) {
  const auto syn = one_second_vowel();
  for (auto _ : state) benchmark::DoNotOptimize(lpcc_analyze(syn.speech, syn.truth_gcis.closures));
}
BENCHMARK(BM_LpccOneSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
