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
#include <numbers>
#include <random>

#include "glottal/errors.hpp"
#include "glottal/lf.hpp"

namespace glottal {
namespace {

constexpr double kRate = 16000.0;

LFParams reference() {
  LFParams p;
  p.T0 = 10e-3;
  p.t_o = 1e-3;
  p.t_p = 4.5e-3;
  p.t_e = 6e-3;
  p.t_a = 0.3e-3;
  p.E_e = 1.0;
  return p;
}

double max_relative_error(const LFParams& got, const LFParams& want) {
  const double g[] = {got.t_o, got.t_p, got.t_e, got.t_a, got.E_e};
  const double w[] = {want.t_o, want.t_p, want.t_e, want.t_a, want.E_e};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(g[i] / w[i] - 1.0));
  return worst;
}

// --- worked examples ---------------------------------------------------------

TEST(LfSynthesize, ZeroNetFlowOverThePeriod) {
  const auto p = reference();
  const auto x = lf_synthesize(p, kRate);
  ASSERT_EQ(x.size(), 160u);
  double integral = 0.0;
  for (double v : x.samples()) integral += v / kRate;
  EXPECT_LT(std::abs(integral), 1e-3 * p.E_e * p.T0);
}

TEST(LfSynthesize, NegativePeakIsMinusEe) {
  auto p = reference();
  p.E_e = 2.5;
  const auto shape = lf_shape(p);
  EXPECT_NEAR(lf_value(p, shape, p.t_e), -2.5, 1e-9);
  EXPECT_EQ(lf_value(p, shape, 0.5 * p.t_o), 0.0);
}

TEST(LfSynthesize, TinyReturnPhaseJumpsToZero) {
  auto p = reference();
  p.t_a = 1e-7;
  const auto shape = lf_shape(p);
  EXPECT_NEAR(lf_value(p, shape, p.t_e + 2.0 / kRate), 0.0, 1e-6);
}

TEST(OpenQuotient, Arithmetic) {
  EXPECT_DOUBLE_EQ(open_quotient(reference(), 100.0), 0.5);
}

TEST(LfFit, ExactRoundTrip) {
  const auto p = reference();
  const auto fit = lf_fit(lf_synthesize(p, kRate), 1.0 / p.T0);
  EXPECT_LT(max_relative_error(fit.params, p), 0.01);
  EXPECT_LT(fit.residual_nrmse, 1e-3);
}

TEST(LfFit, NoisyPulsesWithinFivePercent) {
  const auto p = reference();
  const auto clean = lf_synthesize(p, kRate).samples();
  double rms = 0.0;
  for (double v : clean) rms += v * v;
  rms = std::sqrt(rms / static_cast<double>(clean.size()));
  const double sigma = rms * std::pow(10.0, -40.0 / 20.0);
  std::vector<double> errors;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    auto x = clean;
    for (double& v : x) v += noise(rng);
    const auto fit = lf_fit(SampledSignal(x, kRate), 1.0 / p.T0);
    errors.push_back(max_relative_error(fit.params, p));
  }
  std::sort(errors.begin(), errors.end());
  EXPECT_LT(errors[errors.size() / 2], 0.05);
}

TEST(LfFit, RipplesRaiseResidualAndOnsetSpread) {
  const auto p = reference();
  const auto clean = lf_synthesize(p, kRate).samples();
  std::vector<double> clean_to, rippled_to;
  double clean_res = 0.0, rippled_res = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    auto x = clean;
    std::vector<double> y = clean;
    const double phase = 0.6 * trial;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double t = static_cast<double>(n) / kRate;
      y[n] += 0.2 * std::exp(-t / 3e-3) * std::sin(2.0 * std::numbers::pi * 700.0 * t + phase);
    }
    const auto a = lf_fit(SampledSignal(x, kRate), 100.0);
    const auto b = lf_fit(SampledSignal(y, kRate), 100.0);
    clean_to.push_back(a.params.t_o);
    rippled_to.push_back(b.params.t_o);
    clean_res += a.residual_nrmse;
    rippled_res += b.residual_nrmse;
  }
  auto variance = [](const std::vector<double>& v) {
    double m = 0.0, s = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
  };
  EXPECT_GT(rippled_res, clean_res);
  EXPECT_GT(variance(rippled_to), variance(clean_to));
}

// --- properties --------------------------------------------------------------

TEST(Properties, GradientMatchesFiniteDifferences) {
  const auto target = reference();
  auto at = target;
  at.t_o *= 1.05;
  at.t_a *= 0.9;
  at.E_e *= 1.1;
  // Keep t_e off the sample grid, where the sampled model has a kink.
  at.t_e += 0.37 / kRate;
  const auto pulse = lf_synthesize(target, kRate).samples();
  const auto jac = lf_residual_jacobian(pulse, kRate, at);
  ASSERT_EQ(jac.gradient.size(), 5u);
  auto cost = [&](const LFParams& q) {
    const auto m = lf_sample(q, kRate, pulse.size());
    double s = 0.0;
    for (std::size_t n = 0; n < m.size(); ++n) s += 0.5 * (m[n] - pulse[n]) * (m[n] - pulse[n]);
    return s;
  };
  double* fields[] = {&at.t_o, &at.t_p, &at.t_e, &at.t_a, &at.E_e};
  for (int j = 0; j < 5; ++j) {
    const double x = *fields[j];
    const double h = 1e-6 * (j == 4 ? x : at.T0);
    *fields[j] = x + h;
    const double up = cost(at);
    *fields[j] = x - h;
    const double down = cost(at);
    *fields[j] = x;
    const double numeric = (up - down) / (2.0 * h);
    EXPECT_NEAR(jac.gradient[j], numeric, 1e-4 * std::abs(numeric)) << "parameter " << j;
  }
}

TEST(Properties, OpenQuotientIgnoresAmplitudeAndReturnPhase) {
  auto p = reference();
  const double oq = open_quotient(p, 100.0);
  p.E_e = 3.7;
  p.t_a = 0.11e-3;
  EXPECT_EQ(open_quotient(p, 100.0), oq);
}

TEST(Properties, EnergyConcentratedInTheOpenPhase) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    LFParams p;
    p.T0 = 1.0 / (80.0 + 160.0 * u(rng));
    p.t_o = p.T0 * 0.2 * u(rng);
    p.t_e = p.t_o + p.T0 * (0.35 + 0.4 * u(rng));
    p.t_p = p.t_o + (p.t_e - p.t_o) * (0.6 + 0.3 * u(rng));
    p.t_a = p.T0 * (0.005 + 0.02 * u(rng));
    p.E_e = 1.0;
    if (!p.valid()) continue;
    const auto x = lf_synthesize(p, kRate).samples();
    double total = 0.0, inside = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double t = static_cast<double>(n) / kRate;
      total += x[n] * x[n];
      if (t >= p.t_o && t <= p.t_e + 5.0 * p.t_a) inside += x[n] * x[n];
    }
    EXPECT_GE(inside, 0.95 * total) << c;
  }
}

TEST(Properties, ResidualNrmseNonNegativeAndOqInRange) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  auto x = lf_synthesize(reference(), kRate).samples();
  for (double& v : x) v += noise(rng);
  const auto fit = lf_fit(SampledSignal(x, kRate), 100.0);
  EXPECT_GE(fit.residual_nrmse, 0.0);
  EXPECT_TRUE(fit.params.valid());
  const double oq = open_quotient(fit.params, 100.0);
  EXPECT_GT(oq, 0.0);
  EXPECT_LT(oq, 1.0);
}

// --- error paths -------------------------------------------------------------

TEST(Errors, InvalidParameters) {
  auto p = reference();
  p.t_p = 0.5e-3;
  EXPECT_FALSE(p.valid());
  EXPECT_THROW(lf_shape(p), ArgumentError);
  p = reference();
  p.t_a = 5e-3;
  EXPECT_FALSE(p.valid());
  p = reference();
  p.T0 = 0.5e-3;
  EXPECT_THROW(lf_synthesize(p, kRate), ArgumentError);
}

TEST(Errors, ImplausibleOpenQuotient) {
  auto p = reference();
  EXPECT_THROW(open_quotient(p, 0.0), ArgumentError);
  p.t_o = 0.0;
  p.t_e = std::nextafter(p.T0, 0.0);
  EXPECT_THROW(open_quotient(p, 100.0), ArgumentError);
}

TEST(Errors, FitInputs) {
  const auto x = lf_synthesize(reference(), kRate);
  EXPECT_THROW(lf_fit(x, 0.0), ArgumentError);
  EXPECT_THROW(lf_fit(x, 200.0), ArgumentError);
  EXPECT_THROW(lf_fit(SampledSignal(std::vector<double>(8, 0.0), kRate), 2000.0), ArgumentError);
}

}  // namespace
}  // namespace glottal
