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

#include "glottal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "glottal/baselines.hpp"
#include "glottal/parallel.hpp"

namespace glottal {

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double hi = values[mid];
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

namespace {

// Index of the reference instant nearest to `t` if it is closer than
// half of that reference period.
std::optional<std::size_t> match_nearest(std::ptrdiff_t t, const std::vector<std::ptrdiff_t>& refs,
                                         const std::vector<double>& half_periods) {
  if (refs.empty()) return std::nullopt;
  const auto it = std::lower_bound(refs.begin(), refs.end(), t);
  std::size_t best = refs.size();
  std::ptrdiff_t best_d = std::numeric_limits<std::ptrdiff_t>::max();
  for (auto cand : {it, it == refs.begin() ? it : it - 1}) {
    if (cand == refs.end()) continue;
    const auto d = std::abs(*cand - t);
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(cand - refs.begin());
    }
  }
  if (best == refs.size() || static_cast<double>(best_d) >= half_periods[best]) return std::nullopt;
  return best;
}

}  // namespace

std::vector<double> waveform_error(const GlottalEstimate& est, const SampledSignal& truth,
                                   const GciSequence& truth_gcis, Diagnostics* diag) {
  const auto& refs = truth_gcis.closures;
  std::vector<double> half(refs.size());
  for (std::size_t j = 0; j < refs.size(); ++j) {
    const auto prev = j > 0 ? refs[j] - refs[j - 1] : (refs.size() > 1 ? refs[1] - refs[0] : 1);
    half[j] = 0.5 * static_cast<double>(prev);
  }
  const auto max_shift = static_cast<std::ptrdiff_t>(std::llround(2e-3 * est.source_rate));
  const auto& t = truth.samples();
  const auto total = static_cast<std::ptrdiff_t>(t.size());

  std::vector<double> out;
  std::size_t unmatched = 0;
  for (std::size_t k = 0; k < est.pulses.size(); ++k) {
    const auto& p = est.pulses[k];
    if (!match_nearest(p.next_gci, refs, half)) {
      ++unmatched;
      continue;
    }
    const auto seg = est.fit_segment(k);
    const auto start = p.gci_index + p.epsilon;
    const auto& e = seg.samples();
    const auto len = static_cast<std::ptrdiff_t>(e.size());
    double ee = 0.0;
    for (double v : e) ee += v * v;

    double best = std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t shift = -max_shift; shift <= max_shift; ++shift) {
      if (start + shift < 0 || start + shift + len > total) continue;
      double et = 0.0;
      double tt = 0.0;
      for (std::ptrdiff_t i = 0; i < len; ++i) {
        const double tv = t[static_cast<std::size_t>(start + shift + i)];
        et += e[static_cast<std::size_t>(i)] * tv;
        tt += tv * tv;
      }
      if (tt <= 0.0) continue;
      const double scale = ee > 0.0 ? std::max(0.0, et / ee) : 0.0;
      // ||scale e - t||^2 = tt - 2 scale et + scale^2 ee
      const double err = std::max(0.0, tt - 2.0 * scale * et + scale * scale * ee);
      best = std::min(best, std::sqrt(err / tt));
    }
    if (std::isfinite(best)) {
      out.push_back(best);
    } else {
      ++unmatched;
    }
  }
  if (unmatched > 0) warn(diag, std::to_string(unmatched) + " pulses had no matching truth period");
  if (out.empty()) warn(diag, "no matched periods");
  return out;
}

std::vector<PulseFit> fit_pulses(const GlottalEstimate& est) {
  std::vector<PulseFit> fits(est.pulses.size());
  parallel_for(est.pulses.size(), [&](std::size_t k) {
    auto& f = fits[k];
    const auto& p = est.pulses[k];
    f.pulse_index = k;
    f.closing_gci = p.next_gci;
    f.f0 = est.source_rate / static_cast<double>(p.period());
    try {
      f.fit = lf_fit(est.fit_segment(k), f.f0);
      f.oq = open_quotient(f.fit->params, f.f0);
    } catch (const Error& e) {
      f.failure = e.what();
    }
  });
  return fits;
}

MethodOqStats summarize_errors(std::vector<double> errors) {
  MethodOqStats s;
  s.errors = std::move(errors);
  if (s.errors.empty()) return s;
  const auto n = static_cast<double>(s.errors.size());
  double mean = 0.0;
  double abs_sum = 0.0;
  for (double e : s.errors) {
    mean += e;
    abs_sum += std::abs(e);
  }
  mean /= n;
  s.mean_abs_error = abs_sum / n;
  double var = 0.0;
  for (double e : s.errors) var += (e - mean) * (e - mean);
  s.variance = var / n;
  return s;
}

OqReport oq_report(const std::map<std::string, GlottalEstimate>& methods, const std::vector<double>& f0s,
                   const std::vector<double>& reference_oq,
                   const std::vector<std::ptrdiff_t>& reference_closures) {
  if (f0s.size() != reference_oq.size() || reference_closures.size() != reference_oq.size()) {
    throw ArgumentError("reference f0s, open quotients and closures must have equal length");
  }
  OqReport report;
  report.reference = reference_oq;
  for (const auto& [name, est] : methods) {
    std::vector<double> half(f0s.size());
    for (std::size_t j = 0; j < f0s.size(); ++j) half[j] = 0.5 * est.source_rate / f0s[j];
    auto fits = fit_pulses(est);
    std::vector<double> errors;
    std::vector<std::size_t> refs;
    std::size_t dropped = 0;
    std::vector<std::optional<std::size_t>> fit_ref;
    for (const auto& f : fits) {
      const auto j = match_nearest(f.closing_gci, reference_closures, half);
      if (!j || !f.oq) {
        ++dropped;
        fit_ref.emplace_back();
        continue;
      }
      fit_ref.emplace_back(*j);
      errors.push_back(*f.oq - reference_oq[*j]);
      refs.push_back(*j);
    }
    auto stats = summarize_errors(std::move(errors));
    stats.reference_index = std::move(refs);
    stats.dropped = dropped;
    stats.fits = std::move(fits);
    stats.fit_reference = std::move(fit_ref);
    report.per_method.emplace(name, std::move(stats));
  }
  return report;
}

namespace {

MethodSweepStats finish(MethodSweepStats s) {
  std::vector<double> abs_err(s.oq_errors.size());
  std::transform(s.oq_errors.begin(), s.oq_errors.end(), abs_err.begin(), [](double e) { return std::abs(e); });
  s.median_nrmse = median(s.nrmse);
  s.median_abs_oq_error = median(abs_err);
  const auto stats = summarize_errors(s.oq_errors);
  s.mean_abs_oq_error = stats.mean_abs_error;
  s.oq_error_variance = stats.variance;
  return s;
}

}  // namespace

SweepReport run_sweep(const SweepOptions& options) {
  std::vector<SweepCondition> conditions;
  for (double f0 : options.f0s) {
    for (double oq : options.oqs) conditions.push_back({oq, f0});
  }
  SweepReport report;
  report.conditions.resize(conditions.size());

  parallel_for(
      conditions.size(),
      [&](std::size_t c) {
        const auto cond = conditions[c];
        SynthSpec spec;
        spec.lf = sweep_lf_params(cond.oq, cond.f0);
        spec.f0_track = {cond.f0};
        spec.formants = default_formants();
        spec.lip_alpha = options.pipeline.lip_alpha;
        spec.rate = options.rate;
        spec.n_periods = options.n_periods;
        spec.seed = 1000 + c;
        const auto syn = synth_voice(spec);

        const auto detected = decom_detect(differentiate(syn.egg), options.pipeline.min_f0, options.pipeline.max_f0);
        std::map<std::string, GlottalEstimate> methods;
        methods.emplace("lpcc", lpcc_analyze(syn.speech, detected.closures, options.pipeline));
        methods.emplace("cc", cc_analyze(syn.speech, detected.closures, options.pipeline));
        methods.emplace("iaif", iaif_analyze(syn.speech, detected.closures, options.pipeline));

        const auto oq = oq_report(methods, syn.truth_f0.size() == syn.truth_oq.size()
                                               ? syn.truth_f0
                                               : std::vector<double>(syn.truth_oq.size(), cond.f0),
                                  syn.truth_oq, syn.truth_gcis.closures);
        ConditionResult result;
        result.condition = cond;
        for (const auto& [name, est] : methods) {
          MethodSweepStats s;
          s.nrmse = waveform_error(est, syn.truth_source, syn.truth_gcis);
          s.oq_errors = oq.per_method.at(name).errors;
          result.per_method.emplace(name, finish(std::move(s)));
        }
        report.conditions[c] = std::move(result);
      },
      options.max_workers);

  for (const auto& cond : report.conditions) {
    for (const auto& [name, s] : cond.per_method) {
      auto& pooled = report.pooled[name];
      pooled.nrmse.insert(pooled.nrmse.end(), s.nrmse.begin(), s.nrmse.end());
      pooled.oq_errors.insert(pooled.oq_errors.end(), s.oq_errors.begin(), s.oq_errors.end());
    }
  }
  for (auto& [name, s] : report.pooled) s = finish(std::move(s));
  return report;
}

}  // namespace glottal
