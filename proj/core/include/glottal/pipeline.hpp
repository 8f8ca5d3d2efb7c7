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

// LPCC glottal source estimation: odd-order LP inverse filtering followed by
// pitch-synchronous maximum-phase extraction in the complex cepstrum.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "glottal/errors.hpp"
#include "glottal/signal.hpp"

namespace glottal {

/// Where the cepstral analysis frame of period [s_k, s_k+1] sits.
/// GciSpan: [s_k - e, s_k+1 + e]. GciCentred: two periods centred on s_k+1,
/// which keeps the closing discontinuity away from the window edges.
enum class AnalysisRegion { GciSpan, GciCentred };

/// Every tunable of the three analysis pipelines. Field names double as the
/// keys of the key=value configuration file.
struct PipelineConfig {
  int lp_order = 0;             ///< 0 selects default_lp_order(rate)
  double frame_ms = 25.0;       ///< LP analysis window
  double hop_ms = 10.0;         ///< LP window shift
  double lip_alpha = 0.98;      ///< radiation model 1 - lip_alpha z^-1
  double epsilon_frac = 0.05;   ///< pitch-synchronous region extension per side
  int nfft_factor = 8;          ///< nfft = next pow2 >= factor * region length
  std::ptrdiff_t taper_len = 0; ///< 0 selects half of the anti-causal extent
  bool cepstral_taper = true;   ///< apply the half-Blackman quefrency taper
  WindowKind lp_window = WindowKind::Rectangular;  ///< covariance LP frame taper (LPCC)
  WindowKind iaif_window = WindowKind::Hamming;   ///< LP frame taper inside IAIF
  WindowKind analysis_window = WindowKind::Blackman;
  AnalysisRegion region = AnalysisRegion::GciCentred;
  bool window_compensation = true; ///< divide the pulse by the analysis window (floored)
  int iaif_vt_order = 0;        ///< 0 selects the LP order minus one, forced even
  int iaif_source_order = 4;    ///< glottal model order of the second IAIF pass
  double min_f0 = 50.0;
  double max_f0 = 500.0;

  /// Throws ArgumentError naming the first invalid field.
  void validate() const;
  int resolved_lp_order(double rate) const;
  int resolved_iaif_vt_order(double rate) const;
};

/// One estimated pulse. `waveform` covers the pitch-synchronous region, which
/// starts at `region_start` = gci_index - epsilon and ends at next_gci + epsilon.
struct PulseEstimate {
  std::ptrdiff_t gci_index = 0;
  std::ptrdiff_t next_gci = 0;
  std::ptrdiff_t epsilon = 0;
  std::ptrdiff_t region_start = 0;
  SampledSignal waveform;

  std::ptrdiff_t period() const { return next_gci - gci_index; }
};

struct GlottalEstimate {
  std::string method;
  std::vector<PulseEstimate> pulses;
  double source_rate = 1.0;
  std::vector<std::string> diagnostics;

  /// Pulses laid end to end on the source time axis. Sample n in
  /// (s_k, s_k+1] comes from pulse k, the pulse whose open phase ends at s_k+1.
  SampledSignal concatenated(std::size_t total_length) const;

  /// One period of pulse k for LF fitting: [s_k + eps, s_k+1 + eps).
  SampledSignal fit_segment(std::size_t k) const;
};

/// Odd-order LP inverse filtering with per-frame VTFs made of complex pole
/// pairs only, followed by lip-radiation cancellation. Returns the coarse
/// glottal derivative on the full signal.
SampledSignal lp_coarse_estimate(const SampledSignal& speech, const PipelineConfig& config,
                                 Diagnostics* diag = nullptr);

/// Pitch-synchronous maximum-phase extraction on a coarse estimate.
GlottalEstimate cepstral_refine(const SampledSignal& coarse, const std::vector<std::ptrdiff_t>& gcis,
                                const PipelineConfig& config, const std::string& method);

/// The full LPCC analysis.
GlottalEstimate lpcc_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                             const PipelineConfig& config = {});

/// Cuts a signal into GCI-to-GCI regions without further processing, using
/// the same region boundaries as cepstral_refine.
GlottalEstimate segment_pulses(const SampledSignal& estimate, const std::vector<std::ptrdiff_t>& gcis,
                               const PipelineConfig& config, const std::string& method);

}  // namespace glottal
