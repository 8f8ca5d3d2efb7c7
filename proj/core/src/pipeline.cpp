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

#include "glottal/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framewise.hpp"
#include "glottal/cepstrum.hpp"
#include "glottal/lp.hpp"

namespace glottal {

void PipelineConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ArgumentError("config field '" + field + "' " + why);
  };
  if (lp_order < 0) fail("lp_order", "must be >= 0");
  if (lp_order > 0 && lp_order % 2 == 0) fail("lp_order", "must be odd");
  if (!(frame_ms > 0.0)) fail("frame_ms", "must be positive");
  if (!(hop_ms > 0.0)) fail("hop_ms", "must be positive");
  if (!(lip_alpha > 0.0 && lip_alpha <= 1.0)) fail("lip_alpha", "must lie in (0, 1]");
  if (!(epsilon_frac >= 0.0 && epsilon_frac <= 0.2)) fail("epsilon_frac", "must lie in [0, 0.2]");
  if (nfft_factor < 4) fail("nfft_factor", "must be >= 4");
  if (taper_len != 0 && taper_len < 4) fail("taper_len", "must be 0 (auto) or >= 4");
  if (iaif_vt_order < 0) fail("iaif_vt_order", "must be >= 0");
  if (iaif_source_order < 1) fail("iaif_source_order", "must be >= 1");
  if (!(min_f0 > 0.0 && min_f0 < max_f0)) fail("min_f0", "must be positive and below max_f0");
}

int PipelineConfig::resolved_lp_order(double rate) const {
  return lp_order > 0 ? lp_order : default_lp_order(rate);
}

int PipelineConfig::resolved_iaif_vt_order(double rate) const {
  if (iaif_vt_order > 0) return iaif_vt_order;
  int order = resolved_lp_order(rate) - 1;
  if (order % 2 != 0) --order;
  return std::max(order, 2);
}

SampledSignal GlottalEstimate::concatenated(std::size_t total_length) const {
  std::vector<double> out(total_length, 0.0);
  for (const auto& p : pulses) {
    const auto region_end = p.region_start + static_cast<std::ptrdiff_t>(p.waveform.size());
    const auto begin = std::max(p.gci_index + 1, p.region_start);
    const auto end = std::min({p.next_gci + 1, region_end, static_cast<std::ptrdiff_t>(total_length)});
    for (auto n = std::max<std::ptrdiff_t>(begin, 0); n < end; ++n) {
      out[static_cast<std::size_t>(n)] = p.waveform[static_cast<std::size_t>(n - p.region_start)];
    }
  }
  return SampledSignal(std::move(out), source_rate);
}

SampledSignal GlottalEstimate::fit_segment(std::size_t k) const {
  const auto& p = pulses.at(k);
  const auto start = p.gci_index + p.epsilon;
  std::vector<double> out(static_cast<std::size_t>(p.period()), 0.0);
  for (std::ptrdiff_t i = 0; i < p.period(); ++i) {
    const auto src = start + i - p.region_start;
    if (src >= 0 && src < static_cast<std::ptrdiff_t>(p.waveform.size())) {
      out[static_cast<std::size_t>(i)] = p.waveform[static_cast<std::size_t>(src)];
    }
  }
  return SampledSignal(std::move(out), source_rate);
}

SampledSignal lp_coarse_estimate(const SampledSignal& speech, const PipelineConfig& config,
                                 Diagnostics* diag) {
  config.validate();
  const double rate = speech.rate();
  const int order = config.resolved_lp_order(rate);
  const auto frame_len = samples_for_ms(config.frame_ms, rate);
  const auto hop = std::max<std::ptrdiff_t>(1, samples_for_ms(config.hop_ms, rate));
  if (static_cast<std::ptrdiff_t>(speech.size()) < frame_len) {
    throw AnalysisError("speech is shorter than one LP frame");
  }
  const auto frames = frame_signal(speech, frame_len, hop);
  const auto window = make_window(config.lp_window, frame_len);

  detail::FramewiseFir filters(frame_len, hop);
  std::size_t guideline_misses = 0;
  std::size_t unstable = 0;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    Frame windowed = frames[f];
    for (std::size_t i = 0; i < windowed.samples.size(); ++i) windowed.samples[i] *= window[i];
    try {
      const LPModel model = covariance_lp(windowed, order);
      Diagnostics local;
      const PoleSet poles = find_poles(model, &local);
      if (2 * static_cast<int>(poles.complex_pairs.size()) >= (order - 1) / 2) ++guideline_misses;
      unstable += poles.excluded_unstable.size();
      filters.push(vtf_from_poles(poles).denominator());
    } catch (const DegenerateInputError& e) {
      warn(diag, "LP frame " + std::to_string(f) + " skipped: " + e.what());
      filters.push(std::nullopt);
    } catch (const NumericalError& e) {
      warn(diag, "LP frame " + std::to_string(f) + " skipped: " + e.what());
      filters.push(std::nullopt);
    }
  }
  if (guideline_misses > 0) {
    warn(diag, std::to_string(guideline_misses) + " of " + std::to_string(frames.size()) +
                   " LP frames keep more pole pairs than the 2l < M guideline");
  }
  if (unstable > 0) warn(diag, std::to_string(unstable) + " unstable complex pole pairs excluded");

  auto residual = filters.apply(speech.samples());
  return leaky_integrate(SampledSignal(std::move(residual), rate), config.lip_alpha);
}

namespace {

void check_gcis(const std::vector<std::ptrdiff_t>& gcis, std::size_t length) {
  if (gcis.size() < 2) throw AnalysisError("at least two GCIs are required");
  for (std::size_t k = 0; k < gcis.size(); ++k) {
    if (gcis[k] < 0 || static_cast<std::size_t>(gcis[k]) >= length) {
      throw ArgumentError("GCI " + std::to_string(gcis[k]) + " lies outside the signal");
    }
    if (k > 0 && gcis[k] <= gcis[k - 1]) throw ArgumentError("GCIs must be strictly increasing");
  }
}

constexpr double kCompensationFloor = 0.1;

bool usable_period(std::ptrdiff_t period, double rate, const PipelineConfig& config) {
  const double p = static_cast<double>(period);
  return p >= rate / config.max_f0 && p <= rate / config.min_f0;
}

}  // namespace

GlottalEstimate cepstral_refine(const SampledSignal& coarse, const std::vector<std::ptrdiff_t>& gcis,
                                const PipelineConfig& config, const std::string& method) {
  config.validate();
  check_gcis(gcis, coarse.size());
  GlottalEstimate est;
  est.method = method;
  est.source_rate = coarse.rate();
  Diagnostics diag;

  for (std::size_t k = 0; k + 1 < gcis.size(); ++k) {
    const auto s0 = gcis[k];
    const auto s1 = gcis[k + 1];
    if (!usable_period(s1 - s0, coarse.rate(), config)) {
      diag.warn("pulse " + std::to_string(k) + ": period outside the f0 range; skipped");
      continue;
    }
    try {
      const Frame frame =
          config.region == AnalysisRegion::GciCentred
              ? gci_centred_window(coarse, s0, s1, config.epsilon_frac, config.analysis_window, &diag)
              : pitch_synchronous_window(coarse, s0, s1, config.epsilon_frac, config.analysis_window, &diag);
      const std::size_t nfft = cepstrum_nfft(frame.size(), config.nfft_factor);
      const CepstrumFrame cep = complex_cepstrum(frame, nfft);
      CepstrumFrame anti;
      if (config.cepstral_taper) {
        const auto taper = config.taper_len > 0 ? std::min(config.taper_len, cep.quefrency_limit())
                                                : default_taper_len(cep);
        anti = split_anticausal(cep, taper);
      } else {
        anti = cep;
        for (std::ptrdiff_t n = 1; n < cep.quefrency_limit(); ++n) anti.at(n) = 0.0;
      }
      const auto circ = inverse_cepstrum_circular(anti);

      // Quefrency zero of the anti-causal part marks the end of the open
      // phase; place it on the closing GCI.
      const auto anchor = s1 - frame.start_index;
      const auto size = static_cast<std::ptrdiff_t>(circ.size());
      std::vector<double> pulse(frame.size());
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(frame.size()); ++i) {
        std::ptrdiff_t src = (i - anchor) % size;
        if (src < 0) src += size;
        pulse[static_cast<std::size_t>(i)] = circ[static_cast<std::size_t>(src)];
      }
      if (config.window_compensation) {
        // The window weights the open phase it leaves in the max-phase part.
        const auto w = make_window(config.analysis_window, static_cast<std::ptrdiff_t>(frame.size()));
        for (std::size_t i = 0; i < pulse.size(); ++i) pulse[i] /= std::max(w[i], kCompensationFloor);
      }

      PulseEstimate p;
      p.gci_index = s0;
      p.next_gci = s1;
      p.epsilon = static_cast<std::ptrdiff_t>(std::llround(config.epsilon_frac * static_cast<double>(s1 - s0)));
      p.region_start = frame.start_index;
      p.waveform = normalize_pulse(SampledSignal(std::move(pulse), coarse.rate()));
      est.pulses.push_back(std::move(p));
    } catch (const Error& e) {
      diag.warn("pulse " + std::to_string(k) + " skipped: " + e.what());
    }
  }
  est.diagnostics = std::move(diag.warnings);
  if (est.pulses.size() < 2) {
    throw AnalysisError(method + ": fewer than two usable pulses");
  }
  return est;
}

GlottalEstimate segment_pulses(const SampledSignal& estimate, const std::vector<std::ptrdiff_t>& gcis,
                               const PipelineConfig& config, const std::string& method) {
  config.validate();
  check_gcis(gcis, estimate.size());
  GlottalEstimate est;
  est.method = method;
  est.source_rate = estimate.rate();
  Diagnostics diag;
  for (std::size_t k = 0; k + 1 < gcis.size(); ++k) {
    const auto s0 = gcis[k];
    const auto s1 = gcis[k + 1];
    if (!usable_period(s1 - s0, estimate.rate(), config)) {
      diag.warn("pulse " + std::to_string(k) + ": period outside the f0 range; skipped");
      continue;
    }
    try {
      const Frame frame =
          pitch_synchronous_window(estimate, s0, s1, config.epsilon_frac, WindowKind::Rectangular, &diag);
      PulseEstimate p;
      p.gci_index = s0;
      p.next_gci = s1;
      p.epsilon = static_cast<std::ptrdiff_t>(std::llround(config.epsilon_frac * static_cast<double>(s1 - s0)));
      p.region_start = frame.start_index;
      p.waveform = normalize_pulse(SampledSignal(frame.samples, estimate.rate()));
      est.pulses.push_back(std::move(p));
    } catch (const Error& e) {
      diag.warn("pulse " + std::to_string(k) + " skipped: " + e.what());
    }
  }
  est.diagnostics = std::move(diag.warnings);
  if (est.pulses.size() < 2) throw AnalysisError(method + ": fewer than two usable pulses");
  return est;
}

GlottalEstimate lpcc_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                             const PipelineConfig& config) {
  Diagnostics diag;
  const auto coarse = lp_coarse_estimate(speech, config, &diag);
  auto est = cepstral_refine(coarse, gcis, config, "lpcc");
  est.diagnostics.insert(est.diagnostics.begin(), diag.warnings.begin(), diag.warnings.end());
  return est;
}

}  // namespace glottal
