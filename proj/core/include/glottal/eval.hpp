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

// Synthetic voices with known ground truth, and the metrics used to compare
// glottal source estimators against it.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glottal/gci.hpp"
#include "glottal/lf.hpp"
#include "glottal/pipeline.hpp"

namespace glottal {

struct Formant {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

struct SynthSpec {
  /// Reference period; its timings are rescaled to every period of f0_track.
  LFParams lf;
  /// One entry per period, or a single entry for a constant f0.
  std::vector<double> f0_track;
  std::vector<Formant> formants;
  double lip_alpha = 0.98;
  double rate = 16000.0;
  int n_periods = 50;
  std::optional<double> noise_snr_db;
  std::optional<double> egg_snr_db;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SynthOutput {
  SampledSignal speech;
  SampledSignal truth_source;
  GciSequence truth_gcis;
  std::vector<double> truth_oq;
  std::vector<double> truth_f0;
  SampledSignal egg;
};

/// LF period for a target open quotient and f0 with the timing conventions
/// of the default sweep.
LFParams sweep_lf_params(double oq, double f0);

/// Five-formant vowel tract used by the default sweep.
std::vector<Formant> default_formants();

/// Source-filter forward model: LF train -> formant resonators -> lip radiation,
/// plus a trapezoidal EGG whose contact rises at each closure.
SynthOutput synth_voice(const SynthSpec& spec);

/// Monic all-pole denominator of the formant cascade.
std::vector<double> formant_denominator(const std::vector<Formant>& formants, double rate);

/// Per matched pulse: scale- and shift-aligned (+-2 ms) NRMSE against the truth.
std::vector<double> waveform_error(const GlottalEstimate& est, const SampledSignal& truth,
                                   const GciSequence& truth_gcis, Diagnostics* diag = nullptr);

/// LF fit of one estimated pulse.
struct PulseFit {
  std::size_t pulse_index = 0;
  std::ptrdiff_t closing_gci = 0;
  double f0 = 0.0;
  std::optional<FitResult> fit;
  std::optional<double> oq;
  std::string failure;
};

std::vector<PulseFit> fit_pulses(const GlottalEstimate& est);

struct MethodOqStats {
  std::vector<double> errors;
  std::vector<std::size_t> reference_index;
  double mean_abs_error = 0.0;
  double variance = 0.0;
  std::size_t dropped = 0;
  std::vector<PulseFit> fits;
  /// Per entry of `fits`: the matched reference period, if any.
  std::vector<std::optional<std::size_t>> fit_reference;
};

struct OqReport {
  std::map<std::string, MethodOqStats> per_method;
  std::vector<double> reference;
};

/// Fits every pulse of every method and compares its open quotient with the
/// reference period whose closing instant is nearest (within half a period).
/// `reference_closures[j]` is the instant that ends reference period j and
/// `f0s[j]` its f0.
OqReport oq_report(const std::map<std::string, GlottalEstimate>& methods, const std::vector<double>& f0s,
                   const std::vector<double>& reference_oq,
                   const std::vector<std::ptrdiff_t>& reference_closures);

/// Error statistics over a pooled error list.
MethodOqStats summarize_errors(std::vector<double> errors);

struct SweepCondition {
  double oq = 0.0;
  double f0 = 0.0;
};

struct SweepOptions {
  std::vector<double> oqs{0.4, 0.5, 0.6, 0.7, 0.8};
  std::vector<double> f0s{80.0, 120.0, 160.0, 220.0};
  int n_periods = 50;
  double rate = 16000.0;
  PipelineConfig pipeline;
  unsigned max_workers = 0;
};

struct MethodSweepStats {
  std::vector<double> nrmse;
  std::vector<double> oq_errors;
  double median_nrmse = 0.0;
  double median_abs_oq_error = 0.0;
  double mean_abs_oq_error = 0.0;
  double oq_error_variance = 0.0;
};

struct ConditionResult {
  SweepCondition condition;
  std::map<std::string, MethodSweepStats> per_method;
};

struct SweepReport {
  std::vector<ConditionResult> conditions;
  std::map<std::string, MethodSweepStats> pooled;
};

/// Runs LPCC, CC and IAIF on every condition with GCIs detected from the
/// synthetic EGG. Conditions run in parallel; the report is ordered by
/// condition index.
SweepReport run_sweep(const SweepOptions& options = {});

double median(std::vector<double> values);

}  // namespace glottal
