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

#include "glottal/gci.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace glottal {

namespace {

double percentile_of(std::vector<double>& values, double q) {
  if (values.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size() - 1)));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx), values.end());
  return values[idx];
}

// Percentile of |x| over [centre - half, centre + half]; samples outside the
// signal count as zeros so the statistic does not depend on absolute position.
double local_percentile(const std::vector<double>& x, std::ptrdiff_t centre, std::ptrdiff_t half,
                        double q, std::vector<double>& scratch) {
  scratch.clear();
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  for (std::ptrdiff_t i = centre - half; i <= centre + half; ++i) {
    scratch.push_back(i >= 0 && i < n ? std::abs(x[static_cast<std::size_t>(i)]) : 0.0);
  }
  return percentile_of(scratch, q);
}

// Centred FIR smoothing; edges see zeros beyond the signal.
std::vector<double> smooth_centred(const std::vector<double>& x, const std::vector<double>& kernel) {
  if (kernel.size() <= 1) return x;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto half = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  std::vector<double> y(x.size(), 0.0);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(kernel.size()); ++k) {
      const auto j = i + k - half;
      if (j >= 0 && j < n) acc += kernel[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(j)];
    }
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

std::vector<double> binomial_kernel(int taps) {
  std::vector<double> k{1.0};
  for (int t = 1; t < taps; ++t) {
    std::vector<double> next(k.size() + 1, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
      next[i] += 0.5 * k[i];
      next[i + 1] += 0.5 * k[i];
    }
    k = std::move(next);
  }
  return k;
}

std::vector<double> hann_kernel(double ms, double rate) {
  auto len = static_cast<std::ptrdiff_t>(std::llround(ms * 1e-3 * rate));
  if (len < 3) return {1.0};
  if (len % 2 == 0) ++len;
  std::vector<double> k(static_cast<std::size_t>(len));
  double sum = 0.0;
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    k[static_cast<std::size_t>(i)] = std::sin(std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(len + 1));
    k[static_cast<std::size_t>(i)] *= k[static_cast<std::size_t>(i)];
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

GciSequence decom_detect(const SampledSignal& degg, double min_f0, double max_f0,
                         const DecomOptions& options, Diagnostics* diag) {
  if (!(min_f0 > 0.0 && min_f0 < max_f0)) throw ArgumentError("need 0 < min_f0 < max_f0");
  if (options.closure_smoothing_taps < 1 || options.closure_smoothing_taps % 2 == 0) {
    throw ArgumentError("closure smoothing needs an odd tap count");
  }
  if (!(options.opening_smoothing_ms >= 0.0)) throw ArgumentError("opening smoothing must be non-negative");
  GciSequence out;
  out.rate = degg.rate();
  if (degg.size() < 3) return out;

  std::vector<double> x = degg.samples();
  {
    std::vector<double> pos;
    std::vector<double> neg;
    for (double v : x) {
      pos.push_back(std::max(v, 0.0));
      neg.push_back(std::max(-v, 0.0));
    }
    const double p = percentile_of(pos, 0.995);
    const double q = percentile_of(neg, 0.995);
    if (q > p) {
      warn(diag, "dEGG dominated by negative extrema; polarity flipped");
      for (double& v : x) v = -v;
    }
  }

  const auto opening_x = smooth_centred(x, hann_kernel(options.opening_smoothing_ms, degg.rate()));
  x = smooth_centred(x, binomial_kernel(options.closure_smoothing_taps));

  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto half = static_cast<std::ptrdiff_t>(std::llround(0.5 * options.context_ms * 1e-3 * degg.rate()));
  const double min_spacing = degg.rate() / max_f0;

  struct Candidate {
    std::ptrdiff_t index;
    double value;
  };
  std::vector<Candidate> candidates;
  std::vector<double> scratch;
  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
    const double v = x[static_cast<std::size_t>(i)];
    if (!(v > 0.0 && v >= x[static_cast<std::size_t>(i - 1)] && v > x[static_cast<std::size_t>(i + 1)])) continue;
    const double thr = options.threshold_fraction * local_percentile(x, i, half, options.percentile, scratch);
    if (v > thr) candidates.push_back({i, v});
  }
  if (candidates.empty()) return out;

  // Strongest first; ties resolved towards the earlier sample.
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a].value > candidates[b].value; });
  std::vector<std::ptrdiff_t> accepted;
  for (std::size_t k : order) {
    const auto idx = candidates[k].index;
    const bool clear = std::none_of(accepted.begin(), accepted.end(), [&](std::ptrdiff_t a) {
      return static_cast<double>(std::abs(a - idx)) < min_spacing;
    });
    if (clear) accepted.push_back(idx);
  }
  std::sort(accepted.begin(), accepted.end());
  out.closures = accepted;

  const double max_period = degg.rate() / min_f0;
  for (std::size_t k = 0; k + 1 < out.closures.size(); ++k) {
    const auto a = out.closures[k];
    const auto b = out.closures[k + 1];
    if (static_cast<double>(b - a) > max_period) {
      out.openings.emplace_back(std::nullopt);
      continue;
    }
    std::ptrdiff_t best = -1;
    double best_v = 0.0;
    for (std::ptrdiff_t i = a + 1; i < b; ++i) {
      const double v = opening_x[static_cast<std::size_t>(i)];
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best >= 0) {
      out.openings.emplace_back(best);
    } else {
      out.openings.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::vector<EggOqRecord> egg_open_quotients(const GciSequence& gcis, Diagnostics* diag) {
  if (gcis.closures.size() < 2) throw ArgumentError("need at least two closures");
  std::vector<EggOqRecord> records;
  for (std::size_t k = 0; k + 1 < gcis.closures.size(); ++k) {
    const bool has_opening = k < gcis.openings.size() && gcis.openings[k].has_value();
    if (!has_opening) {
      warn(diag, "period " + std::to_string(k) + " has no opening instant; skipped");
      continue;
    }
    const auto s0 = gcis.closures[k];
    const auto s1 = gcis.closures[k + 1];
    const auto o = *gcis.openings[k];
    EggOqRecord r;
    r.period_index = static_cast<int>(k);
    r.f0 = gcis.rate / static_cast<double>(s1 - s0);
    r.t_closure = static_cast<double>(s1) / gcis.rate;
    r.t_opening = static_cast<double>(o) / gcis.rate;
    r.oq = r.f0 * static_cast<double>(s1 - o) / gcis.rate;
    if (!(r.oq > 0.05 && r.oq < 0.95)) {
      warn(diag, "period " + std::to_string(k) + " open quotient " + std::to_string(r.oq) +
                     " is implausible; skipped");
      continue;
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace glottal
