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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "glottal/lp.hpp"

namespace glottal {
namespace {

using cplx = std::complex<double>;

Frame frame_of(std::vector<double> x, double rate = 16000.0) {
  Frame f;
  f.samples = std::move(x);
  f.rate = rate;
  return f;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

// --- worked examples ---------------------------------------------------------

TEST(CovarianceLp, ExactAr1) {
  std::vector<double> x(64);
  for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::pow(0.5, static_cast<double>(n));
  const auto m = covariance_lp(frame_of(x), 1);
  ASSERT_EQ(m.order(), 1);
  EXPECT_NEAR(m.coefficients[0], 0.5, 1e-10);
}

TEST(CovarianceLp, Order19CoefficientCount) {
  EXPECT_EQ(covariance_lp(frame_of(noise(400, 3)), 19).coefficients.size(), 19u);
  EXPECT_EQ(default_lp_order(16000.0), 19);
}

TEST(CovarianceLp, ResonatorPolesRecovered) {
  const cplx pole = std::polar(0.9, 0.3 * std::numbers::pi);
  const std::vector<double> denom{1.0, -2.0 * pole.real(), std::norm(pole)};
  std::vector<double> impulse(200, 0.0);
  impulse[0] = 1.0;
  const auto x = all_pole_filter(denom, impulse);
  // The impulse response of an AR(2) system satisfies the order-2 recursion exactly.
  const auto poles = find_poles(least_squares_lp(frame_of(x), 2));
  ASSERT_EQ(poles.complex_pairs.size(), 1u);
  EXPECT_NEAR(std::abs(poles.complex_pairs[0]), std::abs(pole), 1e-9);
  EXPECT_NEAR(std::abs(std::arg(poles.complex_pairs[0])), std::arg(pole), 1e-9);
}

TEST(CovarianceLp, NoiseDrivenResonatorAtOddOrder) {
  const cplx pole = std::polar(0.9, 0.3 * std::numbers::pi);
  const std::vector<double> denom{1.0, -2.0 * pole.real(), std::norm(pole)};
  // Estimation error shrinks as 1/sqrt(N); 2e5 samples put it well under 1e-3.
  const auto x = all_pole_filter(denom, noise(200500, 4));
  const auto poles = find_poles(covariance_lp(frame_of({x.begin() + 500, x.end()}), 3));
  ASSERT_EQ(poles.complex_pairs.size(), 1u);
  ASSERT_EQ(poles.real_poles.size(), 1u);
  EXPECT_NEAR(std::abs(poles.complex_pairs[0]), std::abs(pole), 1e-3);
  EXPECT_NEAR(std::abs(std::arg(poles.complex_pairs[0])), std::arg(pole), 1e-3);
}

TEST(FindPoles, SingleRealPole) {
  const auto poles = find_poles(LPModel{{0.5}, 0.0});
  ASSERT_EQ(poles.real_poles.size(), 1u);
  EXPECT_NEAR(poles.real_poles[0], 0.5, 1e-12);
  EXPECT_TRUE(poles.complex_pairs.empty());
}

TEST(FindPoles, RealPlusPair) {
  // (1 - 0.9 z^-1)(1 - z^-1 + 0.61 z^-2)
  const std::vector<double> denom{1.0, -1.9, 1.51, -0.549};
  const auto poles = find_poles(LPModel::from_denominator(denom));
  ASSERT_EQ(poles.real_poles.size(), 1u);
  EXPECT_NEAR(poles.real_poles[0], 0.9, 1e-9);
  ASSERT_EQ(poles.complex_pairs.size(), 1u);
  EXPECT_NEAR(poles.complex_pairs[0].real(), 0.5, 1e-9);
  EXPECT_NEAR(poles.complex_pairs[0].imag(), 0.6, 1e-9);
}

TEST(VtfFromPoles, SinglePair) {
  PoleSet poles;
  poles.complex_pairs = {cplx(0.5, 0.6)};
  poles.source_order = 2;
  const auto d = vtf_from_poles(poles).denominator();
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[0], 1.0, 1e-12);
  EXPECT_NEAR(d[1], -1.0, 1e-12);
  EXPECT_NEAR(d[2], 0.61, 1e-12);
}

TEST(VtfFromPoles, NoRealPolesKeepsModel) {
  const std::vector<double> denom{1.0, -1.0, 0.61};
  const auto model = LPModel::from_denominator(denom);
  const auto vtf = vtf_from_poles(find_poles(model));
  ASSERT_EQ(vtf.order(), 2);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(vtf.coefficients[i], model.coefficients[i], 1e-12);
}

TEST(VtfSpectrum, FlatForTrivialModel) {
  for (const auto& [f, db] : vtf_spectrum(LPModel{}, 64, 8000.0)) EXPECT_NEAR(db, 0.0, 1e-12);
}

TEST(VtfSpectrum, PeakAtPoleAngle) {
  PoleSet poles;
  poles.complex_pairs = {std::polar(0.95, std::numbers::pi / 4)};
  poles.source_order = 2;
  const auto spec = vtf_spectrum(vtf_from_poles(poles), 512, 8000.0);
  const auto peak = std::max_element(spec.begin(), spec.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  EXPECT_NEAR(peak->first, 1000.0, 8000.0 / 512);
}

TEST(InverseFilter, RecoversSourceWithExactVtf) {
  const std::vector<double> denom{1.0, -1.0, 0.61};
  const auto source = noise(300, 5);
  const auto through = all_pole_filter(denom, source);
  const std::vector<double> lip{1.0, -0.98};
  const SampledSignal speech(fir_filter(lip, through), 16000.0);
  const auto out = inverse_filter(speech, LPModel::from_denominator(denom), 0.98);
  for (std::size_t n = 2; n < source.size(); ++n) EXPECT_NEAR(out[n], source[n], 1e-8);
}

// --- properties --------------------------------------------------------------

TEST(Properties, OddOrdersHaveARealPole) {
  for (std::uint64_t seed = 10; seed < 40; ++seed) {
    const auto frame = frame_of(noise(400, seed));
    for (int order = 3; order <= 31; order += 2) {
      const auto poles = find_poles(covariance_lp(frame, order));
      EXPECT_GE(poles.real_poles.size(), 1u) << "order " << order;
      EXPECT_EQ(poles.counted_poles(), order);
    }
  }
}

TEST(Properties, StablePairsInsideUnitCircle) {
  const auto poles = find_poles(covariance_lp(frame_of(noise(400, 6)), 19));
  for (const auto& p : poles.complex_pairs) {
    EXPECT_LT(std::abs(p), 1.0);
    EXPECT_GT(p.imag(), kRealPoleTolerance * (1.0 + std::abs(p)));
  }
}

TEST(Properties, VtfOrderIsEvenAndBelowModelOrder) {
  const auto poles = find_poles(covariance_lp(frame_of(noise(400, 7)), 11));
  const auto vtf = vtf_from_poles(poles);
  EXPECT_EQ(vtf.order() % 2, 0);
  EXPECT_LE(vtf.order(), 10);
}

TEST(Properties, InverseFilterReconstruction) {
  const auto frame = frame_of(noise(400, 8));
  const auto vtf = vtf_from_poles(find_poles(covariance_lp(frame, 19)));
  const SampledSignal x(frame.samples, 16000.0);
  const auto residual = inverse_filter(x, vtf, 0.98).samples();
  const std::vector<double> lip{1.0, -0.98};
  const auto back = all_pole_filter(vtf.denominator(), fir_filter(lip, residual));
  double scale = 0.0;
  for (double v : x.samples()) scale = std::max(scale, std::abs(v));
  for (std::size_t n = static_cast<std::size_t>(vtf.order()); n < back.size(); ++n) {
    EXPECT_NEAR(back[n], x[n], 1e-9 * scale);
  }
}

// --- error paths -------------------------------------------------------------

TEST(Errors, DegenerateFramesAndModels) {
  EXPECT_THROW(covariance_lp(frame_of(std::vector<double>(64, 1.0)), 3), NumericalError);
  EXPECT_THROW(covariance_lp(frame_of({1.0, 2.0}), 3), ArgumentError);
  EXPECT_THROW(find_poles(LPModel{}), ArgumentError);
  EXPECT_THROW(vtf_from_poles(PoleSet{}), DegenerateInputError);
  EXPECT_THROW(inverse_filter(SampledSignal({1, 2}, 1.0), LPModel{{0.5}, 0.0}, 0.0), ArgumentError);
}

}  // namespace
}  // namespace glottal
