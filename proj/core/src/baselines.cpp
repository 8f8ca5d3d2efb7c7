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

#include "glottal/baselines.hpp"

#include <string>

#include "framewise.hpp"
#include "glottal/lp.hpp"

namespace glottal {

namespace {

std::vector<double> windowed(const std::vector<double>& x, const std::vector<double>& w) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * w[i];
  return y;
}

std::vector<double> lp_inverse(const std::vector<double>& x, const std::vector<double>& w, int order,
                               std::ptrdiff_t start) {
  Frame f;
  f.samples = windowed(x, w);
  f.start_index = start;
  return least_squares_lp(f, order).denominator();
}

std::vector<double> integrate(const std::vector<double>& x, double alpha) {
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    prev = x[i] + alpha * prev;
    y[i] = prev;
  }
  return y;
}

// Vocal-tract inverse filter of one frame after two IAIF passes.
std::vector<double> iaif_vocal_tract(const Frame& frame, const std::vector<double>& w, int vt_order,
                                     int source_order, double lip_alpha) {
  const auto& x = frame.samples;
  // Pass 1: remove a first-order glottal tilt, estimate the tract, inverse filter.
  const auto g1 = lp_inverse(x, w, 1, frame.start_index);
  const auto y1 = fir_filter(g1, x);
  const auto v1 = lp_inverse(y1, w, vt_order, frame.start_index);
  const auto src1 = integrate(fir_filter(v1, x), lip_alpha);
  // Pass 2: a higher-order glottal model from the first estimate.
  const auto g2 = lp_inverse(src1, w, source_order, frame.start_index);
  const auto y2 = integrate(fir_filter(g2, x), lip_alpha);
  return lp_inverse(y2, w, vt_order, frame.start_index);
}

}  // namespace

SampledSignal iaif_inverse_filter(const SampledSignal& speech, const PipelineConfig& config,
                                  Diagnostics* diag) {
  config.validate();
  const double rate = speech.rate();
  const int vt_order = config.resolved_iaif_vt_order(rate);
  const auto frame_len = samples_for_ms(config.frame_ms, rate);
  const auto hop = std::max<std::ptrdiff_t>(1, samples_for_ms(config.hop_ms, rate));
  if (static_cast<std::ptrdiff_t>(speech.size()) < frame_len) {
    throw AnalysisError("speech is shorter than one LP frame");
  }
  const auto frames = frame_signal(speech, frame_len, hop);
  const auto w = make_window(config.iaif_window, frame_len);

  detail::FramewiseFir filters(frame_len, hop);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    try {
      filters.push(iaif_vocal_tract(frames[f], w, vt_order, config.iaif_source_order, config.lip_alpha));
    } catch (const NumericalError& e) {
      warn(diag, "IAIF frame " + std::to_string(f) + " skipped: " + e.what());
      filters.push(std::nullopt);
    }
  }
  auto residual = filters.apply(speech.samples());
  return leaky_integrate(SampledSignal(std::move(residual), rate), config.lip_alpha);
}

GlottalEstimate iaif_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                             const PipelineConfig& config) {
  Diagnostics diag;
  const auto source = iaif_inverse_filter(speech, config, &diag);
  auto est = segment_pulses(source, gcis, config, "iaif");
  est.diagnostics.insert(est.diagnostics.begin(), diag.warnings.begin(), diag.warnings.end());
  return est;
}

GlottalEstimate cc_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                           const PipelineConfig& config) {
  config.validate();
  const auto lip_cancelled = leaky_integrate(speech, config.lip_alpha);
  return cepstral_refine(lip_cancelled, gcis, config, "cc");
}

}  // namespace glottal
