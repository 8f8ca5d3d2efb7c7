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

#include "glottal/tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "glottal/baselines.hpp"
#include "glottal/tools/config_file.hpp"
#include "glottal/tools/csv.hpp"

namespace glottal::tools {

namespace fs = std::filesystem;

Method parse_method(std::string_view name) {
  if (name == "lpcc") return Method::Lpcc;
  if (name == "cc") return Method::Cc;
  if (name == "iaif") return Method::Iaif;
  if (name == "all") return Method::All;
  throw ArgumentError("unknown method '" + std::string(name) + "' (expected lpcc, cc, iaif or all)");
}

std::vector<std::string> method_names(Method method) {
  switch (method) {
    case Method::Lpcc: return {"lpcc"};
    case Method::Cc: return {"cc"};
    case Method::Iaif: return {"iaif"};
    case Method::All: return {"lpcc", "cc", "iaif"};
  }
  return {};
}

namespace {

GlottalEstimate estimate_with(const std::string& method, const SampledSignal& speech,
                              const std::vector<std::ptrdiff_t>& gcis, const PipelineConfig& config) {
  if (method == "lpcc") return lpcc_analyze(speech, gcis, config);
  if (method == "cc") return cc_analyze(speech, gcis, config);
  if (method == "iaif") return iaif_analyze(speech, gcis, config);
  throw ArgumentError("unknown method '" + method + "'");
}

// Index of the GCI period that starts at `gci`.
std::ptrdiff_t period_index(const GciSequence& gcis, std::ptrdiff_t gci) {
  const auto it = std::lower_bound(gcis.closures.begin(), gcis.closures.end(), gci);
  return it - gcis.closures.begin();
}

}  // namespace

Analysis analyze_signals(const SampledSignal& speech, const SampledSignal& egg, const PipelineConfig& config,
                         const std::vector<std::string>& methods) {
  config.validate();
  if (speech.size() != egg.size()) throw ArgumentError("speech and EGG lengths differ");
  Analysis a;
  a.rate = speech.rate();
  a.length = speech.size();
  Diagnostics diag;
  a.gcis = decom_detect(differentiate(egg), config.min_f0, config.max_f0, {}, &diag);
  if (a.gcis.closures.size() < 2) throw AnalysisError("fewer than two glottal closures found in the EGG");
  a.egg_oq = egg_open_quotients(a.gcis, &diag);

  std::vector<double> f0s, oqs;
  std::vector<std::ptrdiff_t> closures;
  for (const auto& r : a.egg_oq) {
    f0s.push_back(r.f0);
    oqs.push_back(r.oq);
    closures.push_back(static_cast<std::ptrdiff_t>(std::llround(r.t_closure * a.rate)));
  }
  for (const auto& name : methods) {
    MethodAnalysis m;
    m.name = name;
    m.estimate = estimate_with(name, speech, a.gcis.closures, config);
    auto report = oq_report({{name, m.estimate}}, f0s, oqs, closures);
    m.oq = std::move(report.per_method.at(name));
    for (const auto& w : m.estimate.diagnostics) diag.warn(name + ": " + w);
    a.methods.push_back(std::move(m));
  }
  a.diagnostics = std::move(diag.warnings);
  return a;
}

void write_method_outputs(const fs::path& dir, const Analysis& analysis, const MethodAnalysis& method) {
  fs::create_directories(dir);

  const auto pulses = method.estimate.concatenated(analysis.length);
  CsvTable pulse_csv({"sample_index", "time_s", "value"});
  for (std::size_t n = 0; n < pulses.size(); ++n) {
    pulse_csv.add_row({cell(n), cell(static_cast<double>(n) / analysis.rate), cell(pulses[n])});
  }
  pulse_csv.write(dir / "pulses.csv");

  CsvTable gci_csv({"period_index", "gci_sample", "goi_sample"});
  for (std::size_t k = 0; k < analysis.gcis.closures.size(); ++k) {
    std::optional<std::ptrdiff_t> goi;
    if (k < analysis.gcis.openings.size()) goi = analysis.gcis.openings[k];
    gci_csv.add_row({cell(k), cell(analysis.gcis.closures[k]), cell(goi)});
  }
  gci_csv.write(dir / "gci.csv");

  CsvTable fit_csv({"period_index", "t_o_s", "t_p_s", "t_e_s", "t_a_s", "E_e", "nrmse", "converged"});
  CsvTable oq_csv({"period_index", "f0_hz", "oq_est", "oq_ref", "error"});
  const auto& fits = method.oq.fits;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& f = fits[i];
    const auto& pulse = method.estimate.pulses[f.pulse_index];
    const auto period = period_index(analysis.gcis, pulse.gci_index);
    if (f.fit) {
      const auto& p = f.fit->params;
      fit_csv.add_row({cell(period), cell(p.t_o), cell(p.t_p), cell(p.t_e), cell(p.t_a), cell(p.E_e),
                       cell(f.fit->residual_nrmse), cell(f.fit->converged)});
    } else {
      fit_csv.add_row({cell(period), "", "", "", "", "", "", cell(false)});
    }
    if (!f.oq) continue;
    std::optional<double> ref;
    std::optional<double> error;
    if (i < method.oq.fit_reference.size() && method.oq.fit_reference[i]) {
      ref = analysis.egg_oq[*method.oq.fit_reference[i]].oq;
      error = *f.oq - *ref;
    }
    oq_csv.add_row({cell(period), cell(f.f0), cell(*f.oq), cell(ref), cell(error)});
  }
  fit_csv.write(dir / "lf_fits.csv");
  oq_csv.write(dir / "oq.csv");
}

void write_oq_report(const fs::path& path, const Analysis& analysis) {
  CsvTable csv({"method", "n_matched", "dropped", "mean_abs_error", "median_abs_error", "variance"});
  for (const auto& m : analysis.methods) {
    std::vector<double> abs_err;
    for (double e : m.oq.errors) abs_err.push_back(std::abs(e));
    csv.add_row({cell(m.name), cell(m.oq.errors.size()), cell(m.oq.dropped), cell(m.oq.mean_abs_error),
                 cell(median(abs_err)), cell(m.oq.variance)});
  }
  csv.write(path);
}

namespace {

struct LoadedInput {
  SampledSignal speech;
  SampledSignal egg;
};

LoadedInput load_input(const AnalyzeRequest& request) {
  const auto wav = read_wav(request.input);
  const int channels = static_cast<int>(wav.channels.size());
  const int egg_channel = request.egg_channel.value_or(channels >= 2 ? 1 : -1);
  if (egg_channel < 0 || egg_channel >= channels) {
    throw IoError(request.input.string() + ": no EGG channel (file has " + std::to_string(channels) +
                  " channel(s)); GCIs are derived from the EGG");
  }
  const int speech_channel = egg_channel == 0 ? 1 : 0;
  if (speech_channel >= channels) throw IoError(request.input.string() + ": no speech channel besides the EGG");
  return {SampledSignal(wav.channels[static_cast<std::size_t>(speech_channel)], wav.rate),
          SampledSignal(wav.channels[static_cast<std::size_t>(egg_channel)], wav.rate)};
}

void print_summary(const Analysis& a, std::ostream& out) {
  out << "closures: " << a.gcis.closures.size() << ", EGG open quotients: " << a.egg_oq.size() << "\n";
  for (const auto& m : a.methods) {
    std::vector<double> abs_err;
    for (double e : m.oq.errors) abs_err.push_back(std::abs(e));
    out << m.name << ": pulses=" << m.estimate.pulses.size() << " matched=" << m.oq.errors.size()
        << " mean|oq err|=" << cell(m.oq.mean_abs_error) << " var=" << cell(m.oq.variance) << "\n";
  }
}

int analyze_impl(const AnalyzeRequest& request, bool with_report, std::ostream& out, std::ostream& err) {
  request.pipeline.validate();
  const auto input = load_input(request);
  const auto names = method_names(request.method);
  const auto analysis = analyze_signals(input.speech, input.egg, request.pipeline, names);
  fs::create_directories(request.output_dir);
  for (const auto& m : analysis.methods) {
    const auto dir = names.size() > 1 ? request.output_dir / m.name : request.output_dir;
    write_method_outputs(dir, analysis, m);
  }
  if (with_report) write_oq_report(request.output_dir / "oq_report.csv", analysis);
  print_summary(analysis, out);
  if (request.verbose) {
    for (const auto& w : analysis.diagnostics) err << "warning: " << w << "\n";
  } else if (!analysis.diagnostics.empty()) {
    err << analysis.diagnostics.size() << " warning(s); rerun with --verbose to list them\n";
  }
  return kExitOk;
}

}  // namespace

int run_analyze(const AnalyzeRequest& request, std::ostream& out, std::ostream& err) {
  return guarded([&] { return analyze_impl(request, false, out, err); }, err);
}

int run_compare(AnalyzeRequest request, std::ostream& out, std::ostream& err) {
  request.method = Method::All;
  return guarded([&] { return analyze_impl(request, true, out, err); }, err);
}

int run_synth(const SynthRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        SynthSpec spec;
        spec.lf = sweep_lf_params(request.oq, request.f0);
        spec.f0_track = {request.f0};
        if (request.formants) spec.formants = default_formants();
        spec.lip_alpha = request.lip_alpha;
        spec.rate = request.rate;
        spec.n_periods = request.periods;
        spec.noise_snr_db = request.snr_db;
        spec.egg_snr_db = request.egg_snr_db;
        spec.seed = request.seed;
        const auto syn = synth_voice(spec);

        // Peak-normalise the speech so PCM16 output does not clip.
        double peak = 0.0;
        for (double v : syn.speech.samples()) peak = std::max(peak, std::abs(v));
        const double gain = peak > 0.0 ? 0.9 / peak : 1.0;
        WavData wav;
        wav.rate = request.rate;
        wav.encoding = request.encoding;
        wav.channels.resize(2);
        for (double v : syn.speech.samples()) wav.channels[0].push_back(v * gain);
        wav.channels[1] = syn.egg.samples();

        fs::create_directories(request.output_dir);
        write_wav(request.output_dir / "synth.wav", wav);

        CsvTable source({"sample_index", "time_s", "value"});
        for (std::size_t n = 0; n < syn.truth_source.size(); ++n) {
          source.add_row({cell(n), cell(static_cast<double>(n) / request.rate), cell(syn.truth_source[n])});
        }
        source.write(request.output_dir / "truth_source.csv");

        CsvTable gci({"period_index", "gci_sample", "goi_sample"});
        const auto& g = syn.truth_gcis;
        for (std::size_t k = 0; k < g.closures.size(); ++k) {
          std::optional<std::ptrdiff_t> goi;
          if (k < g.openings.size()) goi = g.openings[k];
          gci.add_row({cell(k), cell(g.closures[k]), cell(goi)});
        }
        gci.write(request.output_dir / "truth_gci.csv");

        CsvTable oq({"period_index", "f0_hz", "oq"});
        for (std::size_t k = 0; k < syn.truth_oq.size(); ++k) {
          oq.add_row({cell(k), cell(syn.truth_f0[k]), cell(syn.truth_oq[k])});
        }
        oq.write(request.output_dir / "truth_oq.csv");

        out << "wrote " << syn.speech.size() << " samples (" << request.periods << " periods) to "
            << (request.output_dir / "synth.wav").string() << "\n";
        return kExitOk;
      },
      err);
}

int run_eval(const EvalRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (request.sweep != "default") {
          throw ArgumentError("unknown sweep '" + request.sweep + "' (only 'default' is defined)");
        }
        request.pipeline.validate();
        SweepOptions options;
        options.n_periods = request.periods;
        options.pipeline = request.pipeline;
        const auto report = run_sweep(options);

        fs::create_directories(request.output_dir);
        CsvTable sweep({"oq", "f0_hz", "method", "n_pulses", "median_nrmse", "n_matched", "mean_abs_error",
                        "median_abs_error", "variance"});
        for (const auto& c : report.conditions) {
          for (const auto& [name, s] : c.per_method) {
            sweep.add_row({cell(c.condition.oq), cell(c.condition.f0), cell(name), cell(s.nrmse.size()),
                           cell(s.median_nrmse), cell(s.oq_errors.size()), cell(s.mean_abs_oq_error),
                           cell(s.median_abs_oq_error), cell(s.oq_error_variance)});
          }
        }
        sweep.write(request.output_dir / "sweep.csv");

        CsvTable pooled({"method", "n_matched", "median_nrmse", "mean_abs_error", "median_abs_error", "variance"});
        for (const auto& [name, s] : report.pooled) {
          pooled.add_row({cell(name), cell(s.oq_errors.size()), cell(s.median_nrmse), cell(s.mean_abs_oq_error),
                          cell(s.median_abs_oq_error), cell(s.oq_error_variance)});
          out << name << ": median NRMSE=" << cell(s.median_nrmse) << " median|oq err|="
              << cell(s.median_abs_oq_error) << " mean|oq err|=" << cell(s.mean_abs_oq_error)
              << " var=" << cell(s.oq_error_variance) << "\n";
        }
        pooled.write(request.output_dir / "oq_report.csv");
        return kExitOk;
      },
      err);
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "analysis failed: " << e.what() << "\n";
    return kExitAnalysis;
  }
}

}  // namespace glottal::tools
