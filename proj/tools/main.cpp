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

// glottal: glottal source analysis from the command line.
//
//   glottal analyze --method lpcc --order 19 --frame-ms 25 in.wav
//   glottal compare -o out in.wav
//   glottal synth --f0 100 --oq 0.6 --periods 50
//   glottal eval --sweep default
//   glottal selftest

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef GLOTTAL_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <glog/logging.h>

#include "glottal/tools/acceptance.hpp"
#include "glottal/tools/commands.hpp"
#include "glottal/tools/config_file.hpp"

namespace {

using namespace glottal;
using namespace glottal::tools;

// Pipeline flags; unset flags leave the config-file value in place.
struct PipelineFlags {
  std::string config_path;
  std::optional<int> order;
  std::optional<double> frame_ms;
  std::optional<double> hop_ms;
  std::optional<double> lip_alpha;
  std::optional<double> epsilon;
  std::optional<int> nfft_factor;
  std::optional<std::string> window;
  std::optional<std::string> region;
  std::vector<std::string> sets;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    app->add_option("--order", order, "LP order (odd); 0 picks the rate-based default");
    app->add_option("--frame-ms", frame_ms, "LP analysis window length in ms");
    app->add_option("--hop-ms", hop_ms, "LP window shift in ms");
    app->add_option("--lip-alpha", lip_alpha, "lip radiation coefficient in (0, 1]");
    app->add_option("--epsilon", epsilon, "pitch-synchronous region extension as a fraction of the period");
    app->add_option("--nfft-factor", nfft_factor, "cepstrum FFT length as a multiple of the region");
    app->add_option("--window", window, "analysis window: hamming, blackman, half_blackman_left, rectangular");
    app->add_option("--region", region, "analysis region: gci_centred or gci_span");
    app->add_option("--set", sets, "override any config key, as key=value");
  }

  PipelineConfig resolve() const {
    PipelineConfig c;
    if (!config_path.empty()) apply_config_file(c, config_path);
    if (order) c.lp_order = *order;
    if (frame_ms) c.frame_ms = *frame_ms;
    if (hop_ms) c.hop_ms = *hop_ms;
    if (lip_alpha) c.lip_alpha = *lip_alpha;
    if (epsilon) c.epsilon_frac = *epsilon;
    if (nfft_factor) c.nfft_factor = *nfft_factor;
    if (window) c.analysis_window = parse_window(*window);
    if (region) c.region = parse_region(*region);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ArgumentError("--set expects key=value, got '" + s + "'");
      apply_config_entry(c, s.substr(0, eq), s.substr(eq + 1));
    }
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  FLAGS_minloglevel = google::GLOG_FATAL;
  google::InitGoogleLogging(argv[0]);

  CLI::App app{"Glottal source estimation: LPCC, complex cepstrum and IAIF"};
  app.require_subcommand(1);

  AnalyzeRequest analyze;
  PipelineFlags analyze_flags;
  std::string method = "lpcc";
  std::optional<int> egg_channel;
  auto* analyze_cmd = app.add_subcommand("analyze", "estimate the glottal source of a speech+EGG WAV file");
  analyze_cmd->add_option("input", analyze.input, "WAV file: channel 0 speech, channel 1 EGG")->required();
  analyze_cmd->add_option("-o,--output-dir", analyze.output_dir, "output directory")->default_val("glottal-out");
  analyze_cmd->add_option("--method", method, "lpcc, cc, iaif or all")->default_val("lpcc");
  analyze_cmd->add_option("--egg-channel", egg_channel, "channel holding the EGG");
  analyze_cmd->add_flag("-v,--verbose", analyze.verbose, "list every diagnostic");
  analyze_flags.add_to(analyze_cmd);

  AnalyzeRequest compare;
  PipelineFlags compare_flags;
  std::optional<int> compare_egg_channel;
  auto* compare_cmd = app.add_subcommand("compare", "run LPCC, CC and IAIF and report open-quotient errors");
  compare_cmd->add_option("input", compare.input, "WAV file: channel 0 speech, channel 1 EGG")->required();
  compare_cmd->add_option("-o,--output-dir", compare.output_dir, "output directory")->default_val("glottal-out");
  compare_cmd->add_option("--egg-channel", compare_egg_channel, "channel holding the EGG");
  compare_cmd->add_flag("-v,--verbose", compare.verbose, "list every diagnostic");
  compare_flags.add_to(compare_cmd);

  SynthRequest synth;
  bool no_formants = false;
  bool pcm16 = false;
  std::optional<double> snr_db, egg_snr_db;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic LF-driven vowel with EGG and ground truth");
  synth_cmd->add_option("-o,--output-dir", synth.output_dir, "output directory")->default_val("glottal-synth");
  synth_cmd->add_option("--f0", synth.f0, "fundamental frequency in Hz")->default_val(synth.f0);
  synth_cmd->add_option("--oq", synth.oq, "open quotient")->default_val(synth.oq);
  synth_cmd->add_option("--periods", synth.periods, "number of glottal periods")->default_val(synth.periods);
  synth_cmd->add_option("--rate", synth.rate, "sample rate in Hz")->default_val(synth.rate);
  synth_cmd->add_option("--lip-alpha", synth.lip_alpha, "lip radiation coefficient")->default_val(synth.lip_alpha);
  synth_cmd->add_option("--snr", snr_db, "speech SNR in dB (noiseless when omitted)");
  synth_cmd->add_option("--egg-snr", egg_snr_db, "EGG SNR in dB (noiseless when omitted)");
  synth_cmd->add_option("--seed", synth.seed, "noise seed")->default_val(synth.seed);
  synth_cmd->add_flag("--no-formants", no_formants, "skip the vocal tract filter");
  synth_cmd->add_flag("--pcm16", pcm16, "write 16-bit PCM instead of 32-bit float");

  EvalRequest eval;
  PipelineFlags eval_flags;
  auto* eval_cmd = app.add_subcommand("eval", "run the synthetic oq x f0 sweep for every method");
  eval_cmd->add_option("-o,--output-dir", eval.output_dir, "output directory")->default_val("glottal-eval");
  eval_cmd->add_option("--sweep", eval.sweep, "sweep name")->default_val("default");
  eval_cmd->add_option("--periods", eval.periods, "periods per condition")->default_val(eval.periods);
  eval_flags.add_to(eval_cmd);

  std::vector<int> criteria;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite and print a pass/fail table");
  selftest_cmd->add_option("--criterion", criteria, "run only these criteria (1-10)")
      ->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }

  if (*analyze_cmd) {
    return guarded(
        [&] {
          analyze.pipeline = analyze_flags.resolve();
          analyze.method = parse_method(method);
          analyze.egg_channel = egg_channel;
          return run_analyze(analyze, std::cout, std::cerr);
        },
        std::cerr);
  }
  if (*compare_cmd) {
    return guarded(
        [&] {
          compare.pipeline = compare_flags.resolve();
          compare.egg_channel = compare_egg_channel;
          return run_compare(compare, std::cout, std::cerr);
        },
        std::cerr);
  }
  if (*synth_cmd) {
    synth.formants = !no_formants;
    synth.encoding = pcm16 ? WavEncoding::Pcm16 : WavEncoding::Float32;
    synth.snr_db = snr_db;
    synth.egg_snr_db = egg_snr_db;
    return run_synth(synth, std::cout, std::cerr);
  }
  if (*eval_cmd) {
    return guarded(
        [&] {
          eval.pipeline = eval_flags.resolve();
          return run_eval(eval, std::cout, std::cerr);
        },
        std::cerr);
  }
  if (*selftest_cmd) return run_selftest(criteria, std::cout);
  return kExitIo;
}
