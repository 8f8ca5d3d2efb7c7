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

// Complex cepstrum and causal / anti-causal (minimum / maximum phase)
// separation of short pitch-synchronous frames.

#pragma once

#include <cstddef>
#include <vector>

#include "glottal/errors.hpp"
#include "glottal/signal.hpp"

namespace glottal {

/// Two-sided complex cepstrum of one frame.
///
/// `values` is stored in DFT order: index i < nfft/2 holds quefrency n = i and
/// index i >= nfft/2 holds n = i - nfft. Use at() for signed access.
struct CepstrumFrame {
  std::vector<double> values;
  double gain_log = 0.0;
  int gain_sign = 1;
  /// Delay in samples (number of z^-1 factors) removed before taking the log.
  int linear_phase_shift = 0;
  /// Length of the frame the cepstrum was computed from.
  std::size_t frame_length = 0;
  double rate = 1.0;

  std::size_t nfft() const { return values.size(); }
  /// Largest |n| available on the anti-causal side (nfft / 2).
  std::ptrdiff_t quefrency_limit() const { return static_cast<std::ptrdiff_t>(values.size() / 2); }
  double at(std::ptrdiff_t n) const;
  double& at(std::ptrdiff_t n);
};

/// Smallest power of two >= `factor` * length.
std::size_t cepstrum_nfft(std::size_t length, int factor);

/// Extracts [s_k - e, s_k1 + e] with e = round(epsilon_frac * (s_k1 - s_k)) and
/// applies `window`. Regions crossing the signal bounds are clipped with a warning.
Frame pitch_synchronous_window(const SampledSignal& coarse, std::ptrdiff_t s_k,
                               std::ptrdiff_t s_k1, double epsilon_frac,
                               WindowKind window = WindowKind::Blackman,
                               Diagnostics* diag = nullptr);

/// Two-period region centred on the closing GCI s_k1: [s_k1 - h, s_k1 + h] with
/// h = (s_k1 - s_k) + round(epsilon_frac * (s_k1 - s_k)), then `window`.
/// Clipping and length checks as pitch_synchronous_window.
Frame gci_centred_window(const SampledSignal& coarse, std::ptrdiff_t s_k, std::ptrdiff_t s_k1,
                         double epsilon_frac, WindowKind window = WindowKind::Blackman,
                         Diagnostics* diag = nullptr);

/// Complex cepstrum via DFT, phase unwrapping and linear-phase removal.
CepstrumFrame complex_cepstrum(const Frame& frame, std::size_t nfft);

/// Drops the causal part (n > 0), keeps n = 0 and tapers n < 0 with a
/// half-Blackman that is 1 at n = -1 and decays to 0 at n = -taper_len.
CepstrumFrame split_anticausal(const CepstrumFrame& cep, std::ptrdiff_t taper_len);

/// Default taper: half of the anti-causal extent.
std::ptrdiff_t default_taper_len(const CepstrumFrame& cep);

/// Back to the time domain with the recorded linear phase restored. Returns
/// `frame_length` samples.
SampledSignal inverse_cepstrum(const CepstrumFrame& cep);

/// Back to the time domain without restoring the delay: the returned nfft
/// samples are circular, with quefrency-zero alignment at index 0 (so the
/// anti-causal content sits at the end of the buffer).
std::vector<double> inverse_cepstrum_circular(const CepstrumFrame& cep);

}  // namespace glottal
