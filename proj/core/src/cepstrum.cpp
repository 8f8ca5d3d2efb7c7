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

#include "glottal/cepstrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>

namespace glottal {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> forward_fft(const std::vector<cplx>& x) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, x);
  return out;
}

std::vector<cplx> inverse_fft(const std::vector<cplx>& x) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, x);
  return out;
}

double wrap_to_pi(double a) {
  // Fold into (-pi, pi].
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

double CepstrumFrame::at(std::ptrdiff_t n) const {
  const auto size = static_cast<std::ptrdiff_t>(values.size());
  if (n < -size / 2 || n >= size / 2) throw ArgumentError("quefrency out of range");
  return values[static_cast<std::size_t>(n < 0 ? n + size : n)];
}

double& CepstrumFrame::at(std::ptrdiff_t n) {
  const auto size = static_cast<std::ptrdiff_t>(values.size());
  if (n < -size / 2 || n >= size / 2) throw ArgumentError("quefrency out of range");
  return values[static_cast<std::size_t>(n < 0 ? n + size : n)];
}

std::size_t cepstrum_nfft(std::size_t length, int factor) {
  if (factor < 1) throw ArgumentError("nfft factor must be positive");
  const std::size_t target = length * static_cast<std::size_t>(factor);
  std::size_t n = 1;
  while (n < target) n <<= 1;
  return n;
}

namespace {

std::ptrdiff_t region_epsilon(std::ptrdiff_t s_k, std::ptrdiff_t s_k1, std::ptrdiff_t total,
                              double epsilon_frac) {
  if (!(s_k < s_k1)) throw ArgumentError("GCIs must be strictly increasing");
  if (s_k < 0 || s_k1 >= total) throw ArgumentError("GCI outside the signal");
  if (!(epsilon_frac >= 0.0 && epsilon_frac <= 0.2)) {
    throw ArgumentError("epsilon_frac must lie in [0, 0.2]");
  }
  return static_cast<std::ptrdiff_t>(std::llround(epsilon_frac * static_cast<double>(s_k1 - s_k)));
}

// [begin, end] inclusive, clipped, windowed.
Frame extract_region(const SampledSignal& coarse, std::ptrdiff_t begin, std::ptrdiff_t end,
                     WindowKind window, Diagnostics* diag) {
  const auto total = static_cast<std::ptrdiff_t>(coarse.size());
  if (begin < 0 || end >= total) {
    warn(diag, "pitch-synchronous region [" + std::to_string(begin) + ", " + std::to_string(end) +
                   "] clipped to the signal");
    begin = std::max<std::ptrdiff_t>(begin, 0);
    end = std::min(end, total - 1);
  }
  const std::ptrdiff_t length = end - begin + 1;
  if (length < 16) {
    throw DegenerateInputError("pitch-synchronous region of " + std::to_string(length) +
                               " samples is shorter than 16");
  }
  const auto w = make_window(window, length);
  Frame f;
  f.start_index = begin;
  f.rate = coarse.rate();
  f.samples.resize(static_cast<std::size_t>(length));
  for (std::ptrdiff_t i = 0; i < length; ++i) {
    f.samples[static_cast<std::size_t>(i)] = coarse[static_cast<std::size_t>(begin + i)] * w[static_cast<std::size_t>(i)];
  }
  return f;
}

}  // namespace

Frame pitch_synchronous_window(const SampledSignal& coarse, std::ptrdiff_t s_k,
                               std::ptrdiff_t s_k1, double epsilon_frac, WindowKind window,
                               Diagnostics* diag) {
  const auto eps = region_epsilon(s_k, s_k1, static_cast<std::ptrdiff_t>(coarse.size()), epsilon_frac);
  return extract_region(coarse, s_k - eps, s_k1 + eps, window, diag);
}

Frame gci_centred_window(const SampledSignal& coarse, std::ptrdiff_t s_k, std::ptrdiff_t s_k1,
                         double epsilon_frac, WindowKind window, Diagnostics* diag) {
  const auto eps = region_epsilon(s_k, s_k1, static_cast<std::ptrdiff_t>(coarse.size()), epsilon_frac);
  const auto half = (s_k1 - s_k) + eps;
  return extract_region(coarse, s_k1 - half, s_k1 + half, window, diag);
}

CepstrumFrame complex_cepstrum(const Frame& frame, std::size_t nfft) {
  const std::size_t len = frame.size();
  if (len == 0) throw ArgumentError("empty frame");
  if (!is_power_of_two(nfft)) throw ArgumentError("nfft must be a power of two");
  if (nfft < 4 * len) {
    throw ArgumentError("nfft " + std::to_string(nfft) + " must be at least 4x the frame length " +
                        std::to_string(len));
  }

  std::vector<cplx> x(nfft, 0.0);
  for (std::size_t i = 0; i < len; ++i) x[i] = frame.samples[i];
  auto spec = forward_fft(x);

  double peak = 0.0;
  for (const auto& v : spec) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw DegenerateInputError("cannot take the cepstrum of an all-zero frame");
  for (std::size_t k = 0; k < nfft; ++k) {
    if (std::abs(spec[k]) < 1e-12 * peak) {
      throw NumericalError("spectral zero at bin " + std::to_string(k) +
                           " makes the log ill-conditioned; increase nfft or change epsilon");
    }
  }

  CepstrumFrame cep;
  cep.frame_length = len;
  cep.rate = frame.rate;
  cep.gain_sign = spec[0].real() < 0.0 ? -1 : 1;

  const std::size_t half = nfft / 2;
  std::vector<double> phase(half + 1);
  double prev_raw = std::arg(static_cast<double>(cep.gain_sign) * spec[0]);
  phase[0] = prev_raw;
  for (std::size_t k = 1; k <= half; ++k) {
    const double raw = std::arg(static_cast<double>(cep.gain_sign) * spec[k]);
    phase[k] = phase[k - 1] + wrap_to_pi(raw - prev_raw);
    prev_raw = raw;
  }
  // phi(pi) = -d * pi for a pure delay of d samples.
  const auto r = static_cast<int>(std::lround(phase[half] / kPi));
  cep.linear_phase_shift = -r;

  std::vector<cplx> log_spec(nfft);
  for (std::size_t k = 0; k <= half; ++k) {
    const double w = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(nfft);
    const double ph = phase[k] - static_cast<double>(r) * w;
    log_spec[k] = cplx(std::log(std::abs(spec[k])), ph);
  }
  for (std::size_t k = half + 1; k < nfft; ++k) log_spec[k] = std::conj(log_spec[nfft - k]);

  const auto c = inverse_fft(log_spec);
  cep.values.resize(nfft);
  for (std::size_t i = 0; i < nfft; ++i) cep.values[i] = c[i].real();
  cep.gain_log = cep.values[0];
  return cep;
}

std::ptrdiff_t default_taper_len(const CepstrumFrame& cep) { return cep.quefrency_limit() / 2; }

CepstrumFrame split_anticausal(const CepstrumFrame& cep, std::ptrdiff_t taper_len) {
  if (taper_len < 4) throw ArgumentError("taper_len must be at least 4");
  const std::ptrdiff_t q = cep.quefrency_limit();
  if (taper_len > q) {
    throw ArgumentError("taper_len " + std::to_string(taper_len) + " exceeds quefrency limit " +
                        std::to_string(q));
  }
  const auto taper = make_window(WindowKind::HalfBlackmanLeft, taper_len);
  CepstrumFrame out = cep;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  out.at(0) = cep.at(0);
  for (std::ptrdiff_t k = 1; k <= taper_len && k <= q; ++k) {
    out.at(-k) = cep.at(-k) * taper[static_cast<std::size_t>(taper_len - k)];
  }
  return out;
}

std::vector<double> inverse_cepstrum_circular(const CepstrumFrame& cep) {
  const std::size_t nfft = cep.nfft();
  if (!is_power_of_two(nfft)) throw ArgumentError("cepstrum length must be a power of two");
  std::vector<cplx> c(cep.values.begin(), cep.values.end());
  auto log_spec = forward_fft(c);
  for (auto& v : log_spec) v = static_cast<double>(cep.gain_sign) * std::exp(v);
  const auto y = inverse_fft(log_spec);

  double max_re = 0.0;
  double max_im = 0.0;
  for (const auto& v : y) {
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  if (max_im > 1e-9 * std::max(max_re, 1e-300)) {
    throw NumericalError("inverse cepstrum has imaginary residue " + std::to_string(max_im) +
                         "; cepstral aliasing suspected, increase nfft");
  }
  std::vector<double> out(nfft);
  for (std::size_t i = 0; i < nfft; ++i) out[i] = y[i].real();
  return out;
}

SampledSignal inverse_cepstrum(const CepstrumFrame& cep) {
  const auto circ = inverse_cepstrum_circular(cep);
  const auto nfft = static_cast<std::ptrdiff_t>(circ.size());
  const std::size_t len = cep.frame_length == 0 ? circ.size() : cep.frame_length;
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::ptrdiff_t src = (static_cast<std::ptrdiff_t>(i) - cep.linear_phase_shift) % nfft;
    if (src < 0) src += nfft;
    out[i] = circ[static_cast<std::size_t>(src)];
  }
  return SampledSignal(std::move(out), cep.rate);
}

}  // namespace glottal
