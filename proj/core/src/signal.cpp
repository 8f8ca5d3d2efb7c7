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

#include "glottal/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glottal/errors.hpp"

namespace glottal {

SampledSignal::SampledSignal(std::vector<double> samples, double rate)
    : samples_(std::move(samples)), rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ArgumentError("sample rate must be positive, got " + std::to_string(rate));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw ArgumentError("non-finite sample at index " + std::to_string(i));
    }
  }
}

SampledSignal& SampledSignal::append(const SampledSignal& other) {
  if (other.empty()) return *this;
  if (empty()) {
    *this = other;
    return *this;
  }
  if (other.rate_ != rate_) throw ArgumentError("cannot concatenate signals with different rates");
  samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
  return *this;
}

std::vector<double> make_window(WindowKind kind, std::ptrdiff_t length) {
  if (length < 1) throw ArgumentError("window length must be >= 1");
  const auto n = static_cast<std::size_t>(length);
  std::vector<double> w(n, 1.0);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  auto blackman = [&](std::size_t i, std::size_t total) {
    if (total == 1) return 1.0;
    const double x = static_cast<double>(i) / static_cast<double>(total - 1);
    const double v = 0.42 - 0.5 * std::cos(kTwoPi * x) + 0.08 * std::cos(2.0 * kTwoPi * x);
    return std::clamp(v, 0.0, 1.0);
  };

  switch (kind) {
    case WindowKind::Rectangular:
      break;
    case WindowKind::Hamming:
      if (n > 1) {
        for (std::size_t i = 0; i < n; ++i) {
          w[i] = 0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
        }
      }
      break;
    case WindowKind::Blackman:
      for (std::size_t i = 0; i < n; ++i) w[i] = blackman(i, n);
      break;
    case WindowKind::HalfBlackmanLeft: {
      const std::size_t full = 2 * n - 1;
      for (std::size_t i = 0; i < n; ++i) w[i] = blackman(i, full);
      w[n - 1] = 1.0;
      break;
    }
  }
  return w;
}

std::vector<Frame> frame_signal(const SampledSignal& signal, std::ptrdiff_t window_len,
                                std::ptrdiff_t hop) {
  if (window_len < 1) throw ArgumentError("window length must be >= 1");
  if (hop < 1) throw ArgumentError("hop must be >= 1");
  const auto total = static_cast<std::ptrdiff_t>(signal.size());
  if (window_len > total) {
    throw ArgumentError("window length " + std::to_string(window_len) +
                        " exceeds signal length " + std::to_string(total));
  }
  std::vector<Frame> frames;
  const auto& x = signal.samples();
  for (std::ptrdiff_t start = 0; start + window_len <= total; start += hop) {
    Frame f;
    f.samples.assign(x.begin() + start, x.begin() + start + window_len);
    f.start_index = start;
    f.rate = signal.rate();
    frames.push_back(std::move(f));
  }
  return frames;
}

SampledSignal differentiate(const SampledSignal& signal) {
  if (signal.size() < 2) throw ArgumentError("differentiate needs at least 2 samples");
  const auto& x = signal.samples();
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 1; n < x.size(); ++n) y[n] = x[n] - x[n - 1];
  return SampledSignal(std::move(y), signal.rate());
}

SampledSignal leaky_integrate(const SampledSignal& signal, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("leaky integration coefficient must lie in (0, 1], got " +
                        std::to_string(alpha));
  }
  if (signal.empty()) throw ArgumentError("leaky_integrate needs at least 1 sample");
  const auto& x = signal.samples();
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    prev = x[n] + alpha * prev;
    y[n] = prev;
  }
  return SampledSignal(std::move(y), signal.rate());
}

std::vector<double> fir_filter(std::span<const double> b, std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    const std::size_t taps = std::min(b.size(), n + 1);
    for (std::size_t k = 0; k < taps; ++k) acc += b[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> all_pole_filter(std::span<const double> a, std::span<const double> x) {
  if (a.empty() || a[0] == 0.0) throw ArgumentError("all-pole filter needs a nonzero a[0]");
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    const std::size_t taps = std::min(a.size(), n + 1);
    for (std::size_t k = 1; k < taps; ++k) acc -= a[k] * y[n - k];
    y[n] = acc / a[0];
  }
  return y;
}

SampledSignal normalize_pulse(const SampledSignal& pulse) {
  const auto& x = pulse.samples();
  if (x.empty()) throw DegenerateInputError("cannot normalize an empty pulse");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double most_negative = *lo;
  const double most_positive = *hi;
  if (most_negative == 0.0 && most_positive == 0.0) {
    throw DegenerateInputError("cannot normalize an all-zero pulse");
  }
  const bool flip = most_positive > -most_negative;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = flip ? -x[i] / most_positive : x[i] / -most_negative;
  }
  return SampledSignal(std::move(y), pulse.rate());
}

std::ptrdiff_t samples_for_ms(double ms, double rate) {
  return static_cast<std::ptrdiff_t>(std::llround(ms * 1e-3 * rate));
}

}  // namespace glottal
