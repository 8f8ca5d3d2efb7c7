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

// Command implementations behind the glottal CLI. Every run_* function
// returns a process exit status: 0 success, 1 analysis failure, 2 I/O or
// configuration error.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "glottal/eval.hpp"
#include "glottal/gci.hpp"
#include "glottal/pipeline.hpp"
#include "glottal/tools/wav.hpp"

namespace glottal::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitIo = 2;

enum class Method { Lpcc, Cc, Iaif, All };

Method parse_method(std::string_view name);
/// Method names run for a selection, in output order.
std::vector<std::string> method_names(Method method);

struct AnalyzeRequest {
  std::filesystem::path input;
  std::filesystem::path output_dir;
  PipelineConfig pipeline;
  Method method = Method::Lpcc;
  /// Channel holding the EGG; defaults to 1 for two-channel files.
  std::optional<int> egg_channel;
  bool verbose = false;
};

struct SynthRequest {
  std::filesystem::path output_dir;
  double f0 = 100.0;
  double oq = 0.6;
  int periods = 50;
  double rate = 16000.0;
  double lip_alpha = 0.98;
  bool formants = true;
  std::optional<double> snr_db;
  std::optional<double> egg_snr_db;
  std::uint64_t seed = 1;
  WavEncoding encoding = WavEncoding::Float32;
};

struct EvalRequest {
  std::filesystem::path output_dir;
  std::string sweep = "default";
  int periods = 50;
  PipelineConfig pipeline;
};

/// One method's estimate with its LF fits matched to the EGG reference.
struct MethodAnalysis {
  std::string name;
  GlottalEstimate estimate;
  MethodOqStats oq;
};

struct Analysis {
  double rate = 0.0;
  std::size_t length = 0;
  GciSequence gcis;
  std::vector<EggOqRecord> egg_oq;
  std::vector<MethodAnalysis> methods;
  std::vector<std::string> diagnostics;
};

/// GCIs from the EGG, then each requested method with LF fits and open
/// quotients compared with the EGG.
Analysis analyze_signals(const SampledSignal& speech, const SampledSignal& egg, const PipelineConfig& config,
                         const std::vector<std::string>& methods);

/// pulses.csv, gci.csv, lf_fits.csv and oq.csv for one method.
void write_method_outputs(const std::filesystem::path& dir, const Analysis& analysis, const MethodAnalysis& method);

/// oq_report.csv over every method of an analysis.
void write_oq_report(const std::filesystem::path& path, const Analysis& analysis);

int run_analyze(const AnalyzeRequest& request, std::ostream& out, std::ostream& err);
/// analyze with every method plus oq_report.csv.
int run_compare(AnalyzeRequest request, std::ostream& out, std::ostream& err);
int run_synth(const SynthRequest& request, std::ostream& out, std::ostream& err);
int run_eval(const EvalRequest& request, std::ostream& out, std::ostream& err);

/// Runs `body`, mapping library exceptions to exit statuses and printing
/// the message on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace glottal::tools
