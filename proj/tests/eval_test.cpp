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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "glottal/baselines.hpp"
#include "glottal/eval.hpp"
#include "glottal/lp.hpp"
#include "glottal/parallel.hpp"

namespace glottal {
namespace {

SynthSpec spec_for(double oq, double f0, bool formants, int periods = 20) {
  SynthSpec spec;
  spec.lf = sweep_lf_params(oq, f0);
  spec.f0_track = {f0};
  if (formants) spec.formants = default_formants();
  spec.n_periods = periods;
  return spec;
}

SampledSignal scaled(const SampledSignal& x, double gain) {
  auto y = x.samples();
  for (double& v : y) v *= gain;
  return SampledSignal(std::move(y), x.rate());
}

// --- worked examples ---------------------------------------------------------

TEST(Synth, NoFormantsGivesLipRadiatedSource) {
  const auto syn = synth_voice(spec_for(0.6, 100.0, false));
  const std::vector<double> lip{1.0, -0.98};
  const auto expected = fir_filter(lip, syn.truth_source.samples());
  ASSERT_EQ(expected.size(), syn.speech.size());
  for (std::size_t n = 0; n < expected.size(); ++n) EXPECT_DOUBLE_EQ(syn.speech[n], expected[n]);
}

TEST(Synth, DesignedOpenQuotient) {
  const auto syn = synth_voice(spec_for(0.6, 100.0, true));
  ASSERT_EQ(syn.truth_oq.size(), 20u);
  for (double oq : syn.truth_oq) EXPECT_NEAR(oq, 0.6, 1e-12);
  EXPECT_EQ(syn.truth_gcis.closures.size(), 20u);
  EXPECT_EQ(syn.truth_gcis.openings.size(), 19u);
}

TEST(Synth, FiveFormantsMakeATenPoleTract) {
  const auto denom = formant_denominator(default_formants(), 16000.0);
  EXPECT_EQ(denom.size(), 11u);
  EXPECT_DOUBLE_EQ(denom[0], 1.0);
}

TEST(WaveformError, TruthAndScaledTruthScoreZero) {
  const auto syn = synth_voice(spec_for(0.5, 120.0, false));
  for (double gain : {1.0, 2.0}) {
    const auto est = segment_pulses(scaled(syn.truth_source, gain), syn.truth_gcis.closures, {}, "t");
    // The aligned NRMSE is a square root, so rounding shows up near 1e-8.
    for (double e : waveform_error(est, syn.truth_source, syn.truth_gcis)) EXPECT_NEAR(e, 0.0, 1e-6);
  }
}

TEST(WaveformError, InvariantToSmallIntegerShifts) {
  const auto syn = synth_voice(spec_for(0.5, 120.0, false));
  const auto x = syn.truth_source.samples();
  for (std::ptrdiff_t shift : {-16, -3, 5, 20}) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
      const auto m = static_cast<std::ptrdiff_t>(n) - shift;
      if (m >= 0 && m < static_cast<std::ptrdiff_t>(x.size())) y[n] = x[static_cast<std::size_t>(m)];
    }
    std::vector<std::ptrdiff_t> gcis = syn.truth_gcis.closures;
    for (auto& g : gcis) g += shift;
    gcis.erase(std::remove_if(gcis.begin(), gcis.end(),
                              [&](std::ptrdiff_t g) { return g <= 0 || g >= static_cast<std::ptrdiff_t>(x.size()); }),
               gcis.end());
    const auto est = segment_pulses(SampledSignal(y, syn.truth_source.rate()), gcis, {}, "shifted");
    const auto err = waveform_error(est, syn.truth_source, syn.truth_gcis);
    ASSERT_FALSE(err.empty()) << shift;
    EXPECT_LT(median(err), 1e-6) << shift;
  }
}

TEST(WaveformError, TenPercentNoise) {
  const auto syn = synth_voice(spec_for(0.5, 120.0, false, 40));
  auto x = syn.truth_source.samples();
  double rms = 0.0;
  for (double v : x) rms += v * v;
  rms = std::sqrt(rms / static_cast<double>(x.size()));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.1 * rms);
  for (double& v : x) v += noise(rng);
  const auto est = segment_pulses(SampledSignal(x, syn.truth_source.rate()), syn.truth_gcis.closures, {}, "noisy");
  EXPECT_NEAR(median(waveform_error(est, syn.truth_source, syn.truth_gcis)), 0.1, 0.02);
}

TEST(OqReport, ReferenceGeneratorScoresNearZero) {
  const auto syn = synth_voice(spec_for(0.6, 120.0, false));
  std::map<std::string, GlottalEstimate> methods;
  methods.emplace("truth", segment_pulses(syn.truth_source, syn.truth_gcis.closures, {}, "truth"));
  std::vector<std::ptrdiff_t> closures(syn.truth_gcis.closures.begin() + 1, syn.truth_gcis.closures.end());
  std::vector<double> oq(syn.truth_oq.begin() + 1, syn.truth_oq.end());
  std::vector<double> f0(oq.size(), 120.0);
  const auto report = oq_report(methods, f0, oq, closures);
  const auto& s = report.per_method.at("truth");
  ASSERT_FALSE(s.errors.empty());
  for (double e : s.errors) EXPECT_LT(std::abs(e), 0.01);
  EXPECT_EQ(s.fit_reference.size(), s.fits.size());
}

TEST(Stats, MedianAndSummary) {
  EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_TRUE(std::isnan(median({})));
  const auto s = summarize_errors({0.1, -0.1, 0.3});
  EXPECT_NEAR(s.mean_abs_error, 0.5 / 3.0, 1e-15);
  EXPECT_NEAR(s.variance, 0.08 / 3.0, 1e-15);
}

// --- baselines ---------------------------------------------------------------

TEST(Iaif, TrivialTractNearlyReturnsTheSource) {
  const auto spec = spec_for(0.6, 120.0, false);
  const auto syn = synth_voice(spec);
  const auto est = iaif_analyze(syn.speech, syn.truth_gcis.closures);
  EXPECT_EQ(est.method, "iaif");
  EXPECT_LT(median(waveform_error(est, syn.truth_source, syn.truth_gcis)), 0.15);
}

TEST(Iaif, InverseFilterKeepsLength) {
  const auto syn = synth_voice(spec_for(0.6, 120.0, true));
  EXPECT_EQ(iaif_inverse_filter(syn.speech, {}).size(), syn.speech.size());
}

TEST(Cc, ProducesFinitePulses) {
  const auto syn = synth_voice(spec_for(0.5, 160.0, true));
  const auto est = cc_analyze(syn.speech, syn.truth_gcis.closures);
  EXPECT_EQ(est.method, "cc");
  for (double e : waveform_error(est, syn.truth_source, syn.truth_gcis)) EXPECT_TRUE(std::isfinite(e));
}

// --- properties --------------------------------------------------------------

TEST(Properties, SynthIsDeterministic) {
  auto spec = spec_for(0.7, 160.0, true);
  spec.noise_snr_db = 30.0;
  spec.egg_snr_db = 30.0;
  spec.seed = 42;
  const auto a = synth_voice(spec);
  const auto b = synth_voice(spec);
  EXPECT_EQ(a.speech.samples(), b.speech.samples());
  EXPECT_EQ(a.egg.samples(), b.egg.samples());
  spec.seed = 43;
  EXPECT_NE(synth_voice(spec).speech.samples(), a.speech.samples());
}

TEST(Properties, SmallSweepReportsEveryMethod) {
  SweepOptions options;
  options.oqs = {0.6};
  options.f0s = {120.0, 220.0};
  options.n_periods = 12;
  const auto report = run_sweep(options);
  ASSERT_EQ(report.conditions.size(), 2u);
  for (const char* m : {"lpcc", "cc", "iaif"}) {
    ASSERT_TRUE(report.pooled.count(m)) << m;
    EXPECT_FALSE(report.pooled.at(m).nrmse.empty());
  }
}

TEST(Properties, ParallelForVisitsEachIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; }, 4);
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(worker_count(), 1u);
}

TEST(Properties, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, [](std::size_t i) { if (i == 57) throw AnalysisError("boom"); }, 4),
               AnalysisError);
}

// --- error paths -------------------------------------------------------------

TEST(Errors, InvalidSynthSpecs) {
  auto spec = spec_for(0.6, 100.0, true);
  spec.n_periods = 1;
  EXPECT_THROW(synth_voice(spec), ArgumentError);
  spec = spec_for(0.6, 100.0, true);
  spec.f0_track = {100.0, 110.0};
  EXPECT_THROW(synth_voice(spec), ArgumentError);
  spec = spec_for(0.6, 100.0, true);
  spec.formants = {{9000.0, 100.0}};
  EXPECT_THROW(synth_voice(spec), ArgumentError);
  EXPECT_THROW(sweep_lf_params(0.95, 100.0), ArgumentError);
}

TEST(Errors, MismatchedReferences) {
  EXPECT_THROW(oq_report({}, {100.0}, {0.5, 0.6}, {1, 2}), ArgumentError);
}

TEST(Errors, NoMatchedPeriodsIsDiagnosed) {
  const auto syn = synth_voice(spec_for(0.6, 120.0, false));
  const auto est = segment_pulses(syn.truth_source, syn.truth_gcis.closures, {}, "t");
  GciSequence far;
  far.closures = {100000, 100200};
  Diagnostics diag;
  EXPECT_TRUE(waveform_error(est, syn.truth_source, far, &diag).empty());
  EXPECT_FALSE(diag.empty());
}

}  // namespace
}  // namespace glottal
