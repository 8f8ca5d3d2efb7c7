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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace glottal {

/// Uniformly sampled real waveform. Samples are finite and rate is positive;
/// the constructor enforces both.
class SampledSignal {
 public:
  SampledSignal() = default;
  SampledSignal(std::vector<double> samples, double rate);

  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& mutable_samples() { return samples_; }
  double rate() const { return rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double duration() const { return static_cast<double>(samples_.size()) / rate_; }

  /// Appends `other`; an empty signal acts as identity regardless of rate.
  SampledSignal& append(const SampledSignal& other);

 private:
  std::vector<double> samples_;
  double rate_ = 1.0;
};

/// A contiguous excerpt of a signal, remembering where it came from.
struct Frame {
  std::vector<double> samples;
  std::ptrdiff_t start_index = 0;
  double rate = 1.0;

  std::size_t size() const { return samples.size(); }
};

enum class WindowKind { Hamming, Blackman, HalfBlackmanLeft, Rectangular };

/// Window coefficients in [0, 1].
///
/// Hamming and Blackman are the symmetric forms (denominator length - 1).
/// HalfBlackmanLeft(L) is the rising half of a Blackman window of odd length
/// 2L - 1, so it ends exactly on the peak value 1.
std::vector<double> make_window(WindowKind kind, std::ptrdiff_t length);

/// Splits `signal` into frames of `window_len` samples starting every `hop`
/// samples. A trailing partial frame is dropped.
std::vector<Frame> frame_signal(const SampledSignal& signal, std::ptrdiff_t window_len,
                                std::ptrdiff_t hop);

/// First difference with y[0] = 0.
SampledSignal differentiate(const SampledSignal& signal);

/// y[n] = x[n] + alpha * y[n-1]; inverts the radiation filter 1 - alpha z^-1.
SampledSignal leaky_integrate(const SampledSignal& signal, double alpha);

/// Applies the FIR filter b[0] + b[1] z^-1 + ... with zero initial state.
std::vector<double> fir_filter(std::span<const double> b, std::span<const double> x);

/// Applies 1 / (a[0] + a[1] z^-1 + ...) with zero initial state. a[0] must be nonzero.
std::vector<double> all_pole_filter(std::span<const double> a, std::span<const double> x);

/// Scales a pulse so that its most negative sample is -1. If the largest
/// magnitude extremum is positive the polarity is flipped first.
SampledSignal normalize_pulse(const SampledSignal& pulse);

/// Default shifting-window hop and length in samples for a rate.
std::ptrdiff_t samples_for_ms(double ms, double rate);

}  // namespace glottal
