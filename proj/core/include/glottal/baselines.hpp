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

#include <vector>

#include "glottal/pipeline.hpp"

namespace glottal {

/// Two-pass iterative adaptive inverse filtering on the shifting LP frames.
/// Returns the glottal derivative estimate on the full signal.
SampledSignal iaif_inverse_filter(const SampledSignal& speech, const PipelineConfig& config,
                                  Diagnostics* diag = nullptr);

/// IAIF estimate segmented on the given GCIs.
GlottalEstimate iaif_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                             const PipelineConfig& config = {});

/// Complex-cepstrum decomposition applied straight to the lip-compensated
/// speech, with no LP stage.
GlottalEstimate cc_analyze(const SampledSignal& speech, const std::vector<std::ptrdiff_t>& gcis,
                           const PipelineConfig& config = {});

}  // namespace glottal
