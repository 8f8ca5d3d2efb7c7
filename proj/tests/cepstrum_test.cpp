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
#include <random>

#include "glottal/cepstrum.hpp"

namespace glottal {
namespace {

using cplx = std::complex<double>;

Frame frame_of(std::vector<double> x) {
  Frame f;
  f.samples = std::move(x);
  f.rate = 16000.0;
  return f;
}

std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out;
  for (const auto& v : c) out.push_back(v.real());
  return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  }
  return y;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

// --- worked examples ---------------------------------------------------------

TEST(ComplexCepstrum, ScaledImpulse) {
  const auto cep = complex_cepstrum(frame_of({2.0}), 64);
  EXPECT_NEAR(cep.at(0), std::log(2.0), 1e-12);
  for (std::ptrdiff_t n = 1; n < 32; ++n) {
    EXPECT_NEAR(cep.at(n), 0.0, 1e-12);
    EXPECT_NEAR(cep.at(-n), 0.0, 1e-12);
  }
  EXPECT_EQ(cep.gain_sign, 1);
}

TEST(ComplexCepstrum, MinimumPhaseFactor) {
  const auto cep = complex_cepstrum(frame_of({1.0, -0.5}), 1024);
  EXPECT_NEAR(cep.at(1), -0.5, 1e-12);
  EXPECT_NEAR(cep.at(2), -0.125, 1e-12);
  EXPECT_NEAR(cep.at(3), -0.125 / 3.0, 1e-12);
  EXPECT_EQ(cep.linear_phase_shift, 0);
}

// 1 - 2 z^-1 = -2 z^-1 (1 - z/2): b = 1/2 and c[n] = b^-n / n for n < 0, so
// the anti-causal values are negative.
TEST(ComplexCepstrum, MaximumPhaseFactor) {
  const auto cep = complex_cepstrum(frame_of({1.0, -2.0}), 1024);
  EXPECT_NEAR(cep.at(-1), -0.5, 1e-12);
  EXPECT_NEAR(cep.at(-2), -0.125, 1e-12);
  EXPECT_NEAR(cep.at(0), std::log(2.0), 1e-12);
  EXPECT_NEAR(cep.at(1), 0.0, 1e-12);
  EXPECT_EQ(cep.gain_sign, -1);
  EXPECT_EQ(cep.linear_phase_shift, 1);
}

TEST(PitchSynchronousWindow, ExactPeriodWithoutExtension) {
  const SampledSignal s(std::vector<double>(3000, 1.0), 16000.0);
  const auto f = pitch_synchronous_window(s, 1000, 1160, 0.0, WindowKind::Rectangular);
  EXPECT_EQ(f.start_index, 1000);
  EXPECT_EQ(f.size(), 161u);
}

TEST(PitchSynchronousWindow, FivePercentExtension) {
  const SampledSignal s(std::vector<double>(3000, 1.0), 16000.0);
  const auto f = pitch_synchronous_window(s, 1000, 1160, 0.05, WindowKind::Rectangular);
  EXPECT_EQ(f.start_index, 992);
  EXPECT_EQ(f.size(), 177u);
}

TEST(GciCentredWindow, TwoPeriodsAroundClosure) {
  const SampledSignal s(std::vector<double>(3000, 1.0), 16000.0);
  const auto f = gci_centred_window(s, 1000, 1160, 0.05, WindowKind::Rectangular);
  EXPECT_EQ(f.start_index, 1160 - 168);
  EXPECT_EQ(f.size(), 2u * 168u + 1u);
}

TEST(SplitAnticausal, MinimumPhaseKeepsOnlyGain) {
  const auto cep = complex_cepstrum(frame_of({1.0, -0.5, 0.06}), 256);
  const auto split = split_anticausal(cep, 64);
  EXPECT_NEAR(split.at(0), cep.at(0), 1e-15);
  for (std::ptrdiff_t n = 1; n < 128; ++n) {
    EXPECT_EQ(split.at(n), 0.0);
    EXPECT_NEAR(split.at(-n), 0.0, 1e-12);
  }
}

TEST(SplitAnticausal, TaperIsUnityNextToOrigin) {
  const auto cep = complex_cepstrum(frame_of({1.0, -2.0}), 256);
  const auto split = split_anticausal(cep, 64);
  EXPECT_NEAR(split.at(-1), cep.at(-1), 1e-15);
}

TEST(SplitAnticausal, AttenuatesMonotonically) {
  const auto cep = complex_cepstrum(frame_of(poly_from_roots({1.05, cplx(1.1, 0.3), cplx(1.1, -0.3)})), 512);
  constexpr std::ptrdiff_t kTaper = 64;
  const auto split = split_anticausal(cep, kTaper);
  const auto w = make_window(WindowKind::HalfBlackmanLeft, kTaper);
  double in = 0.0, out = 0.0;
  for (std::ptrdiff_t k = 1; k <= cep.quefrency_limit(); ++k) {
    in += cep.at(-k) * cep.at(-k);
    out += split.at(-k) * split.at(-k);
    const double expected = k <= kTaper ? cep.at(-k) * w[static_cast<std::size_t>(kTaper - k)] : 0.0;
    EXPECT_NEAR(split.at(-k), expected, 1e-15);
  }
  EXPECT_LE(out, in);
}

TEST(InverseCepstrum, RoundTrip) {
  const std::vector<double> x{0.3, -1.0, 0.7, 0.25, -0.4, 0.1};
  const auto back = inverse_cepstrum(complex_cepstrum(frame_of(x), 64)).samples();
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-8);
}

TEST(InverseCepstrum, MaximumPhaseFrameSurvivesSplit) {
  const auto x = poly_from_roots({1.5, cplx(2.0, 1.0), cplx(2.0, -1.0)});
  // A long FFT keeps the taper flat over the quefrencies that carry energy.
  const auto cep = complex_cepstrum(frame_of(x), 16384);
  const auto back = inverse_cepstrum(split_anticausal(cep, cep.quefrency_limit())).samples();
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-6);
}

TEST(InverseCepstrum, RecoversMaximumPhaseFactor) {
  const auto e_max = poly_from_roots({1.5, cplx(2.0, 1.0), cplx(2.0, -1.0)});
  const auto e_min = poly_from_roots({0.6, cplx(0.5, 0.4), cplx(0.5, -0.4)});
  const auto cep = complex_cepstrum(frame_of(convolve(e_min, e_max)), 1024);
  const auto back = inverse_cepstrum(split_anticausal(cep, cep.quefrency_limit())).samples();
  EXPECT_GE(correlation({back.begin(), back.begin() + static_cast<std::ptrdiff_t>(e_max.size())}, e_max), 0.99);
}

// --- properties --------------------------------------------------------------

TEST(Properties, MinimumPhasePurity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mod(0.2, 0.9), ang(0.0, 3.14159);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> roots;
    for (int i = 0; i < 4; ++i) {
      const cplx r = std::polar(mod(rng), ang(rng));
      roots.push_back(r);
      roots.push_back(std::conj(r));
    }
    const auto cep = complex_cepstrum(frame_of(poly_from_roots(roots)), 1024);
    double anti = 0.0, total = 0.0;
    for (std::ptrdiff_t n = -cep.quefrency_limit() + 1; n < cep.quefrency_limit(); ++n) {
      total += cep.at(n) * cep.at(n);
      if (n < 0) anti += cep.at(n) * cep.at(n);
    }
    EXPECT_LT(anti / total, 1e-10);
  }
}

TEST(Properties, ConvolutionAdditivity) {
  const auto a = poly_from_roots({0.7, cplx(0.3, 0.6), cplx(0.3, -0.6)});
  const auto b = poly_from_roots({-1.4, cplx(1.2, 1.0), cplx(1.2, -1.0)});
  const auto ca = complex_cepstrum(frame_of(a), 512);
  const auto cb = complex_cepstrum(frame_of(b), 512);
  const auto cab = complex_cepstrum(frame_of(convolve(a, b)), 512);
  for (std::size_t n = 0; n < 512; ++n) EXPECT_NEAR(cab.values[n], ca.values[n] + cb.values[n], 1e-7);
  EXPECT_EQ(cab.linear_phase_shift, ca.linear_phase_shift + cb.linear_phase_shift);
}

TEST(Properties, NfftRounding) {
  EXPECT_EQ(cepstrum_nfft(177, 8), 2048u);
  EXPECT_EQ(cepstrum_nfft(128, 4), 512u);
}

// --- error paths -------------------------------------------------------------

TEST(Errors, InvalidCepstrumInputs) {
  EXPECT_THROW(complex_cepstrum(frame_of({}), 64), ArgumentError);
  EXPECT_THROW(complex_cepstrum(frame_of({1.0, 0.5}), 48), ArgumentError);
  EXPECT_THROW(complex_cepstrum(frame_of({1.0, 0.5}), 4), ArgumentError);
  EXPECT_THROW(complex_cepstrum(frame_of({0.0, 0.0}), 64), DegenerateInputError);
  // 1 - z^-2 vanishes at DC and Nyquist.
  EXPECT_THROW(complex_cepstrum(frame_of({1.0, 0.0, -1.0}), 64), NumericalError);
  const auto cep = complex_cepstrum(frame_of({1.0, -0.5}), 64);
  EXPECT_THROW(split_anticausal(cep, 3), ArgumentError);
  EXPECT_THROW(split_anticausal(cep, 33), ArgumentError);
}

TEST(Errors, RegionTooShortOrClipped) {
  const SampledSignal s(std::vector<double>(400, 1.0), 16000.0);
  EXPECT_THROW(pitch_synchronous_window(s, 100, 110, 0.0), DegenerateInputError);
  Diagnostics diag;
  const auto f = pitch_synchronous_window(s, 300, 399, 0.2, WindowKind::Blackman, &diag);
  EXPECT_FALSE(diag.empty());
  EXPECT_EQ(f.start_index + static_cast<std::ptrdiff_t>(f.size()), 400);
}

}  // namespace
}  // namespace glottal
