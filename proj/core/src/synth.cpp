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

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "glottal/eval.hpp"

namespace glottal {

namespace {

constexpr double kPi = std::numbers::pi;
// Closure is fast and opening slow, as in recorded EGG.
constexpr double kRiseSeconds = 0.25e-3;
constexpr double kFallSeconds = 1.0e-3;

// Smooth 0 -> 1 step centred on 0 with total width `width`.
double smooth_step(double t, double width) {
  if (t <= -0.5 * width) return 0.0;
  if (t >= 0.5 * width) return 1.0;
  return 0.5 * (1.0 + std::sin(kPi * t / width));
}

double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(x.size()));
}

void add_noise(std::vector<double>& x, double snr_db, std::mt19937_64& rng) {
  const double sigma = rms(x) * std::pow(10.0, -snr_db / 20.0);
  std::normal_distribution<double> noise(0.0, sigma);
  for (double& v : x) v += noise(rng);
}

LFParams scaled(const LFParams& ref, double period) {
  const double s = period / ref.T0;
  LFParams p = ref;
  p.t_o *= s;
  p.t_p *= s;
  p.t_e *= s;
  p.t_a *= s;
  p.T0 = period;
  return p;
}

}  // namespace

void SynthSpec::validate() const {
  if (const auto err = lf.validation_error(); !err.empty()) throw ArgumentError("synth LF parameters: " + err);
  if (!(rate > 0.0)) throw ArgumentError("synth rate must be positive");
  if (n_periods < 2) throw ArgumentError("synth needs at least two periods");
  if (f0_track.empty()) throw ArgumentError("synth f0_track is empty");
  if (f0_track.size() != 1 && f0_track.size() != static_cast<std::size_t>(n_periods)) {
    throw ArgumentError("f0_track must hold 1 or n_periods entries");
  }
  for (double f0 : f0_track) {
    if (!(f0 > 0.0) || rate / f0 < 16.0) throw ArgumentError("f0 " + std::to_string(f0) + " is out of range");
  }
  for (const auto& f : formants) {
    if (!(f.frequency_hz > 0.0 && f.frequency_hz < rate / 2.0)) {
      throw ArgumentError("formant frequency must lie in (0, rate/2)");
    }
    if (!(f.bandwidth_hz > 0.0)) throw ArgumentError("formant bandwidth must be positive");
  }
  if (!(lip_alpha > 0.0 && lip_alpha <= 1.0)) throw ArgumentError("lip_alpha must lie in (0, 1]");
}

LFParams sweep_lf_params(double oq, double f0) {
  if (!(oq > 0.0 && oq < 0.9)) throw ArgumentError("sweep open quotient must lie in (0, 0.9)");
  LFParams p;
  p.T0 = 1.0 / f0;
  p.t_e = 0.9 * p.T0;
  p.t_o = p.t_e - oq * p.T0;
  constexpr double kRk = 0.35;  // (t_e - t_p) / (t_p - t_o)
  p.t_p = p.t_o + (p.t_e - p.t_o) / (1.0 + kRk);
  p.t_a = 0.02 * p.T0;
  p.E_e = 1.0;
  return p;
}

std::vector<Formant> default_formants() {
  return {{660.0, 80.0}, {1720.0, 100.0}, {2410.0, 120.0}, {3500.0, 160.0}, {4500.0, 200.0}};
}

std::vector<double> formant_denominator(const std::vector<Formant>& formants, double rate) {
  std::vector<double> denom{1.0};
  for (const auto& f : formants) {
    const double r = std::exp(-kPi * f.bandwidth_hz / rate);
    const double theta = 2.0 * kPi * f.frequency_hz / rate;
    const double section[3] = {1.0, -2.0 * r * std::cos(theta), r * r};
    std::vector<double> next(denom.size() + 2, 0.0);
    for (std::size_t i = 0; i < denom.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += denom[i] * section[j];
    }
    denom = std::move(next);
  }
  return denom;
}

SynthOutput synth_voice(const SynthSpec& spec) {
  spec.validate();
  const double rate = spec.rate;
  const auto periods = static_cast<std::size_t>(spec.n_periods);

  std::vector<double> starts(periods + 1, 0.0);
  std::vector<LFParams> params(periods);
  std::vector<LFShape> shapes(periods);
  SynthOutput out;
  for (std::size_t k = 0; k < periods; ++k) {
    const double f0 = spec.f0_track.size() == 1 ? spec.f0_track[0] : spec.f0_track[k];
    params[k] = scaled(spec.lf, 1.0 / f0);
    shapes[k] = lf_shape(params[k]);
    starts[k + 1] = starts[k] + params[k].T0;
    out.truth_f0.push_back(f0);
    out.truth_oq.push_back(f0 * (params[k].t_e - params[k].t_o));
  }
  const auto total = static_cast<std::size_t>(std::ceil(starts[periods] * rate));

  std::vector<double> source(total, 0.0);
  std::vector<double> egg(total, 1.0);
  std::size_t k = 0;
  for (std::size_t n = 0; n < total; ++n) {
    const double t = static_cast<double>(n) / rate;
    while (k + 1 < periods && t >= starts[k + 1]) ++k;
    if (t < starts[periods]) source[n] = lf_value(params[k], shapes[k], t - starts[k]);
    // Contact drops at each opening and rises at each closure.
    double open = 0.0;
    for (std::size_t j = (k > 0 ? k - 1 : 0); j < std::min(periods, k + 2); ++j) {
      open += smooth_step(t - (starts[j] + params[j].t_o), kFallSeconds) -
              smooth_step(t - (starts[j] + params[j].t_e), kRiseSeconds);
    }
    egg[n] = 1.0 - open;
  }

  out.truth_gcis.rate = rate;
  for (std::size_t j = 0; j < periods; ++j) {
    out.truth_gcis.closures.push_back(static_cast<std::ptrdiff_t>(std::llround((starts[j] + params[j].t_e) * rate)));
  }
  for (std::size_t j = 0; j + 1 < periods; ++j) {
    out.truth_gcis.openings.emplace_back(
        static_cast<std::ptrdiff_t>(std::llround((starts[j + 1] + params[j + 1].t_o) * rate)));
  }

  std::vector<double> speech = all_pole_filter(formant_denominator(spec.formants, rate), source);
  const double lip[2] = {1.0, -spec.lip_alpha};
  speech = fir_filter(lip, speech);

  std::mt19937_64 rng(spec.seed);
  if (spec.noise_snr_db) add_noise(speech, *spec.noise_snr_db, rng);
  if (spec.egg_snr_db) add_noise(egg, *spec.egg_snr_db, rng);

  out.speech = SampledSignal(std::move(speech), rate);
  out.truth_source = SampledSignal(std::move(source), rate);
  out.egg = SampledSignal(std::move(egg), rate);
  return out;
}

}  // namespace glottal
