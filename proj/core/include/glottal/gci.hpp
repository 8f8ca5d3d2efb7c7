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

// Glottal closure / opening instants from the derivative of an EGG signal.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "glottal/errors.hpp"
#include "glottal/signal.hpp"

namespace glottal {

/// Closures are strictly increasing sample indices. openings[k] belongs to the
/// span (closures[k], closures[k + 1]) and is empty when none was found or the
/// span is too long to be a voiced period.
struct GciSequence {
  std::vector<std::ptrdiff_t> closures;
  std::vector<std::optional<std::ptrdiff_t>> openings;
  double rate = 1.0;

  bool empty() const { return closures.empty(); }
};

struct DecomOptions {
  /// Peaks must exceed this fraction of the local 99th percentile of |dEGG|.
  double threshold_fraction = 0.35;
  /// Context over which the percentile is taken, centred on the candidate.
  double context_ms = 100.0;
  double percentile = 0.99;
  /// Zero-phase binomial smoothing of dEGG before closure peak picking, in
  /// taps (odd; 1 disables).
  int closure_smoothing_taps = 3;
  /// Zero-phase Hann smoothing of dEGG before the opening search (0 disables).
  double opening_smoothing_ms = 0.5;
};

/// Peak picking on dEGG: positive peaks are closures, the deepest negative
/// peak between consecutive closures is the opening. If the dEGG is dominated
/// by negative extrema the polarity is flipped first.
GciSequence decom_detect(const SampledSignal& degg, double min_f0, double max_f0,
                         const DecomOptions& options = {}, Diagnostics* diag = nullptr);

struct EggOqRecord {
  int period_index = 0;
  /// Closing instant that ends the open phase (seconds).
  double t_closure = 0.0;
  double t_opening = 0.0;
  double f0 = 0.0;
  double oq = 0.0;
};

/// Open quotient per period: f0 * (next closure - opening). Periods without an
/// opening or with oq outside (0.05, 0.95) are skipped.
std::vector<EggOqRecord> egg_open_quotients(const GciSequence& gcis, Diagnostics* diag = nullptr);

}  // namespace glottal
