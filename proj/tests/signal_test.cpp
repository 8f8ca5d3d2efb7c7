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
#include <random>

#include "glottal/errors.hpp"
#include "glottal/signal.hpp"

namespace glottal {
namespace {

// --- worked examples ---------------------------------------------------------

TEST(Window, RectangularIsOnes) {
  EXPECT_EQ(make_window(WindowKind::Rectangular, 4), (std::vector<double>{1, 1, 1, 1}));
}

TEST(Window, HammingThreePoints) {
  const auto w = make_window(WindowKind::Hamming, 3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_NEAR(w[0], 0.08, 1e-12);
  EXPECT_NEAR(w[1], 1.0, 1e-12);
  EXPECT_NEAR(w[2], 0.08, 1e-12);
}

TEST(Window, HalfBlackmanLeftRisesToOne) {
  const auto w = make_window(WindowKind::HalfBlackmanLeft, 8);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_NEAR(w.back(), 1.0, 1e-12);
  EXPECT_NEAR(w.front(), 0.0, 1e-12);
  for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LE(w[i - 1], w[i]);
}

TEST(Window, BlackmanIsSymmetric) {
  const auto w = make_window(WindowKind::Blackman, 9);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], w[w.size() - 1 - i], 1e-15);
  EXPECT_NEAR(w[4], 1.0, 1e-12);
}

TEST(Frames, SingleFrame) {
  const SampledSignal s(std::vector<double>(400, 1.0), 16000.0);
  const auto frames = frame_signal(s, 400, 160);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].start_index, 0);
}

TEST(Frames, StartIndices) {
  const SampledSignal s(std::vector<double>(1000, 1.0), 16000.0);
  const auto frames = frame_signal(s, 400, 160);
  ASSERT_EQ(frames.size(), 4u);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    EXPECT_EQ(frames[i].start_index, static_cast<std::ptrdiff_t>(160 * i));
    EXPECT_EQ(frames[i].size(), 400u);
  }
}

TEST(Frames, TwentyFiveMsAt16kHz) { EXPECT_EQ(samples_for_ms(25.0, 16000.0), 400); }

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(SampledSignal({3, 3, 3, 3}, 1.0)).samples(), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(differentiate(SampledSignal({0, 1, 2, 3}, 1.0)).samples(), (std::vector<double>{0, 1, 1, 1}));
  EXPECT_EQ(differentiate(SampledSignal({0, 2, 1}, 1.0)).samples(), (std::vector<double>{0, 2, -1}));
}

TEST(LeakyIntegrate, Examples) {
  EXPECT_EQ(leaky_integrate(SampledSignal({1, 0, 0, 0}, 1.0), 1.0).samples(), (std::vector<double>{1, 1, 1, 1}));
  EXPECT_EQ(leaky_integrate(SampledSignal({1, 0, 0, 0}, 1.0), 0.5).samples(),
            (std::vector<double>{1, 0.5, 0.25, 0.125}));
}

TEST(NormalizePulse, Examples) {
  EXPECT_EQ(normalize_pulse(SampledSignal({0, -2, 0}, 1.0)).samples(), (std::vector<double>{0, -1, 0}));
  const auto flipped = normalize_pulse(SampledSignal({0, 3, -1}, 1.0)).samples();
  EXPECT_DOUBLE_EQ(flipped[0], 0.0);
  EXPECT_DOUBLE_EQ(flipped[1], -1.0);
  EXPECT_DOUBLE_EQ(flipped[2], 1.0 / 3.0);
  const SampledSignal unit({0.2, -1.0, 0.5}, 1.0);
  EXPECT_EQ(normalize_pulse(unit).samples(), unit.samples());
}

// --- properties --------------------------------------------------------------

TEST(Properties, DifferentiateThenIntegrateRestoresInput) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise;
  std::vector<double> x(500);
  for (auto& v : x) v = noise(rng);
  const auto y = leaky_integrate(differentiate(SampledSignal(x, 1.0)), 1.0).samples();
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(y[n] + x[0], x[n], 1e-12 * scale);
}

TEST(Properties, AllPoleUndoesFir) {
  const std::vector<double> a{1.0, -1.2, 0.72};
  std::vector<double> x(64);
  for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::sin(0.3 * static_cast<double>(n)) + (n == 0 ? 1.0 : 0.0);
  const auto y = fir_filter(a, all_pole_filter(a, x));
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(y[n], x[n], 1e-12);
}

TEST(Properties, NormalizedPulseHasMinusOneMinimum) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(50);
    for (auto& v : x) v = noise(rng);
    const auto y = normalize_pulse(SampledSignal(x, 1.0)).samples();
    EXPECT_DOUBLE_EQ(*std::min_element(y.begin(), y.end()), -1.0);
    EXPECT_LE(*std::max_element(y.begin(), y.end()), 1.0);
  }
}

TEST(Properties, AppendIgnoresEmpty) {
  SampledSignal a;
  a.append(SampledSignal({1, 2}, 8000.0));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.rate(), 8000.0);
}

// --- error paths -------------------------------------------------------------

TEST(Errors, InvalidArguments) {
  EXPECT_THROW(make_window(WindowKind::Hamming, 0), ArgumentError);
  EXPECT_THROW(frame_signal(SampledSignal({1, 2, 3}, 1.0), 4, 1), ArgumentError);
  EXPECT_THROW(differentiate(SampledSignal({1}, 1.0)), ArgumentError);
  EXPECT_THROW(leaky_integrate(SampledSignal({1}, 1.0), 0.0), ArgumentError);
  EXPECT_THROW(leaky_integrate(SampledSignal({1}, 1.0), 1.5), ArgumentError);
  EXPECT_THROW(normalize_pulse(SampledSignal({0, 0}, 1.0)), DegenerateInputError);
  EXPECT_THROW(SampledSignal({1.0}, 0.0), ArgumentError);
}

}  // namespace
}  // namespace glottal
