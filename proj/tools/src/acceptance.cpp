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

#include "glottal/tools/acceptance.hpp"

#include <stdlib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "glottal/baselines.hpp"
#include "glottal/cepstrum.hpp"
#include "glottal/lp.hpp"
#include "glottal/tools/commands.hpp"

namespace glottal::tools {

namespace fs = std::filesystem;

namespace {

using cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

constexpr double kRate = 16000.0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Caps worker threads for the lifetime of the object.
class SingleThreaded {
 public:
  SingleThreaded() {
    if (const char* v = std::getenv("GLOTTAL_NUM_THREADS")) saved_ = v;
    setenv("GLOTTAL_NUM_THREADS", "1", 1);
  }
  ~SingleThreaded() {
    if (saved_) setenv("GLOTTAL_NUM_THREADS", saved_->c_str(), 1);
    else unsetenv("GLOTTAL_NUM_THREADS");
  }
  SingleThreaded(const SingleThreaded&) = delete;
  SingleThreaded& operator=(const SingleThreaded&) = delete;

 private:
  std::optional<std::string> saved_;
};

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "glottal-acceptance-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw IoError("cannot create a temporary directory");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Coefficients of gain * prod (1 - r z^-1).
std::vector<double> poly_from_roots(const std::vector<cplx>& roots, double gain) {
  std::vector<cplx> c{gain};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

// Up to `degree` roots with conjugate pairs kept together; moduli in [lo, hi].
std::vector<cplx> random_roots(std::mt19937_64& rng, int degree, const std::function<double()>& modulus) {
  std::vector<cplx> roots;
  while (static_cast<int>(roots.size()) < degree) {
    const double m = modulus();
    if (degree - static_cast<int>(roots.size()) >= 2 && uniform(rng, 0.0, 1.0) < 0.7) {
      const cplx r = std::polar(m, uniform(rng, 0.05, 0.95) * std::numbers::pi);
      roots.push_back(r);
      roots.push_back(std::conj(r));
    } else {
      roots.emplace_back(uniform(rng, 0.0, 1.0) < 0.5 ? -m : m, 0.0);
    }
  }
  return roots;
}

Frame as_frame(std::vector<double> x) {
  Frame f;
  f.samples = std::move(x);
  f.rate = kRate;
  return f;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  }
  return y;
}

double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// 1. FFT cepstrum against the root-sum series.
CriterionResult cepstrum_oracle() {
  CriterionResult r;
  constexpr int kCases = 200;
  constexpr std::size_t kNfft = 1024;
  constexpr int kMaxQuefrency = 64;
  constexpr double kTol = 1e-6;
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const int degree = std::uniform_int_distribution<int>(1, 24)(rng);
    const auto roots = random_roots(rng, degree, [&] {
      return uniform(rng, 0.0, 1.0) < 0.5 ? uniform(rng, 0.3, 0.9) : uniform(rng, 1.1, 2.5);
    });
    const double gain = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.5, 2.0);
    const auto cep = complex_cepstrum(as_frame(poly_from_roots(roots, gain)), kNfft);

    double c0 = std::log(std::abs(gain));
    for (const auto& z : roots) {
      if (std::abs(z) > 1.0) c0 += std::log(std::abs(z));
    }
    worst = std::max(worst, std::abs(cep.at(0) - c0));
    for (int n = 1; n <= kMaxQuefrency; ++n) {
      cplx pos = 0.0;
      cplx neg = 0.0;
      for (const auto& z : roots) {
        if (std::abs(z) < 1.0) pos -= std::pow(z, n) / static_cast<double>(n);
        else neg -= std::pow(1.0 / z, n) / static_cast<double>(n);
      }
      worst = std::max(worst, std::abs(cep.at(n) - pos.real()));
      worst = std::max(worst, std::abs(cep.at(-n) - neg.real()));
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst <= kTol && r.seconds < 10.0;
  r.detail = std::to_string(kCases) + " polynomials, max |error| " + fmt(worst) + " (<= 1e-6), runtime " +
             fmt(r.seconds) + " s (< 10 s)";
  return r;
}

// Noise through a random stable all-pole filter.
std::vector<double> random_stable_frame(std::mt19937_64& rng, std::size_t length) {
  const int pairs = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<cplx> poles;
  for (int i = 0; i < pairs; ++i) {
    const cplx p = std::polar(uniform(rng, 0.7, 0.98), uniform(rng, 0.02, 0.98) * std::numbers::pi);
    poles.push_back(p);
    poles.push_back(std::conj(p));
  }
  if (uniform(rng, 0.0, 1.0) < 0.5) poles.emplace_back(uniform(rng, -0.9, 0.9), 0.0);
  const auto denom = poly_from_roots(poles, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  constexpr std::size_t kBurnIn = 200;
  std::vector<double> x(length + kBurnIn);
  for (auto& v : x) v = noise(rng);
  auto y = all_pole_filter(denom, x);
  return {y.begin() + kBurnIn, y.end()};
}

// 2. Odd LP orders always yield a real pole.
CriterionResult odd_order_real_root() {
  CriterionResult r;
  constexpr int kFrames = 1000;
  std::mt19937_64 rng(202);
  const auto t0 = Clock::now();
  int checks = 0;
  int violations = 0;
  for (int f = 0; f < kFrames; ++f) {
    const auto frame = as_frame(random_stable_frame(rng, 400));
    for (int order = 3; order <= 31; order += 2) {
      const auto poles = find_poles(covariance_lp(frame, order));
      ++checks;
      if (poles.real_poles.empty()) ++violations;
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = violations == 0;
  r.detail = std::to_string(checks) + " frame/order checks, " + std::to_string(violations) + " without a real pole (0)";
  return r;
}

// 3. Inverse filtering with the generating VTF recovers the source.
CriterionResult inverse_system_identity() {
  CriterionResult r;
  constexpr int kCases = 100;
  constexpr double kTol = 1e-8;
  std::mt19937_64 rng(303);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const int pairs = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<cplx> poles;
    for (int i = 0; i < pairs; ++i) {
      const cplx p = std::polar(uniform(rng, 0.5, 0.97), uniform(rng, 0.02, 0.98) * std::numbers::pi);
      poles.push_back(p);
      poles.push_back(std::conj(p));
    }
    const auto denom = poly_from_roots(poles, 1.0);
    const double lip = uniform(rng, 0.9, 1.0);
    std::vector<double> source(800);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (auto& v : source) v = noise(rng);
    const auto through_vtf = all_pole_filter(denom, source);
    const std::vector<double> radiation{1.0, -lip};
    const SampledSignal speech(fir_filter(radiation, through_vtf), kRate);
    const auto recovered = inverse_filter(speech, LPModel::from_denominator(denom), lip);
    const auto order = static_cast<std::size_t>(2 * pairs);
    double err = 0.0;
    for (std::size_t n = order; n < source.size(); ++n) err = std::max(err, std::abs(recovered[n] - source[n]));
    worst = std::max(worst, err / max_abs(source));
  }
  r.seconds = seconds_since(t0);
  r.passed = worst <= kTol;
  r.detail = std::to_string(kCases) + " cases, max relative error " + fmt(worst) + " (<= 1e-8)";
  return r;
}

// 4. Homomorphic round trip and additivity over min/max-phase factor pairs.
CriterionResult homomorphic_identities() {
  CriterionResult r;
  constexpr int kCases = 100;
  constexpr std::size_t kNfft = 1024;
  constexpr double kRoundTripTol = 1e-8;
  constexpr double kAdditivityTol = 1e-7;
  std::mt19937_64 rng(404);
  const auto t0 = Clock::now();
  double worst_round_trip = 0.0;
  double worst_additivity = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const auto inner = random_roots(rng, std::uniform_int_distribution<int>(2, 12)(rng),
                                    [&] { return uniform(rng, 0.3, 0.9); });
    const auto outer = random_roots(rng, std::uniform_int_distribution<int>(2, 12)(rng),
                                    [&] { return uniform(rng, 1.1, 2.5); });
    const auto e_min = poly_from_roots(inner, uniform(rng, 0.5, 2.0));
    const auto e_max = poly_from_roots(outer, uniform(rng, 0.5, 2.0));
    const auto both = convolve(e_min, e_max);

    const auto cep = complex_cepstrum(as_frame(both), kNfft);
    const auto back = inverse_cepstrum(cep);
    double err = 0.0;
    for (std::size_t n = 0; n < both.size(); ++n) err = std::max(err, std::abs(back[n] - both[n]));
    worst_round_trip = std::max(worst_round_trip, err / max_abs(both));

    const auto c_min = complex_cepstrum(as_frame(e_min), kNfft);
    const auto c_max = complex_cepstrum(as_frame(e_max), kNfft);
    for (std::size_t n = 0; n < kNfft; ++n) {
      worst_additivity =
          std::max(worst_additivity, std::abs(cep.values[n] - (c_min.values[n] + c_max.values[n])));
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst_round_trip <= kRoundTripTol && worst_additivity <= kAdditivityTol;
  r.detail = std::to_string(kCases) + " factor pairs, round trip " + fmt(worst_round_trip) + " (<= 1e-8), additivity " +
             fmt(worst_additivity) + " (<= 1e-7)";
  return r;
}

// 5. LPCC accuracy over the default synthetic sweep.
CriterionResult sweep_accuracy(AcceptanceContext& context) {
  CriterionResult r;
  double sweep_seconds = 0.0;
  const auto& report = context.sweep(&sweep_seconds);
  const auto& lpcc = report.pooled.at("lpcc");
  r.seconds = sweep_seconds;
  r.passed = lpcc.median_nrmse <= 0.2 && lpcc.median_abs_oq_error <= 0.1 && sweep_seconds < 300.0;
  r.detail = "LPCC median NRMSE " + fmt(lpcc.median_nrmse) + " (<= 0.2), median |oq error| " +
             fmt(lpcc.median_abs_oq_error) + " (<= 0.1), sweep runtime " + fmt(sweep_seconds) + " s (< 300 s)";
  return r;
}

// 6. Variance ordering and comparable mean errors across methods.
CriterionResult method_ordering(AcceptanceContext& context) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const auto& report = context.sweep();
  const auto& lpcc = report.pooled.at("lpcc");
  const auto& cc = report.pooled.at("cc");
  const auto& iaif = report.pooled.at("iaif");
  const double lo = std::min({lpcc.mean_abs_oq_error, cc.mean_abs_oq_error, iaif.mean_abs_oq_error});
  const double hi = std::max({lpcc.mean_abs_oq_error, cc.mean_abs_oq_error, iaif.mean_abs_oq_error});
  const bool ordered = lpcc.oq_error_variance <= cc.oq_error_variance && lpcc.oq_error_variance <= iaif.oq_error_variance;
  const bool similar = lo > 0.0 && hi <= 2.0 * lo;
  r.seconds = seconds_since(t0);
  r.passed = ordered && similar;
  r.detail = "oq error variance LPCC " + fmt(lpcc.oq_error_variance) + ", CC " + fmt(cc.oq_error_variance) +
             ", IAIF " + fmt(iaif.oq_error_variance) + " (LPCC lowest); mean |error| " + fmt(lpcc.mean_abs_oq_error) +
             "/" + fmt(cc.mean_abs_oq_error) + "/" + fmt(iaif.mean_abs_oq_error) + ", max/min " +
             fmt(lo > 0.0 ? hi / lo : INFINITY) + " (<= 2)";
  return r;
}

LFParams random_lf(std::mt19937_64& rng) {
  LFParams p;
  const double f0 = uniform(rng, 80.0, 220.0);
  p.T0 = 1.0 / f0;
  const double oq = uniform(rng, 0.4, 0.8);
  const double lo = std::max(oq, 0.5) + 0.03;
  p.t_e = p.T0 * uniform(rng, lo, 0.9);
  p.t_o = p.t_e - oq * p.T0;
  const double rk = uniform(rng, 0.25, 0.45);
  p.t_p = (p.t_e + rk * p.t_o) / (1.0 + rk);
  p.t_a = p.T0 * uniform(rng, 0.01, 0.04);
  p.E_e = uniform(rng, 0.5, 2.0);
  return p;
}

double half_sum_squares(std::span<const double> pulse, const LFParams& p) {
  const auto model = lf_sample(p, kRate, pulse.size());
  double s = 0.0;
  for (std::size_t n = 0; n < pulse.size(); ++n) s += 0.5 * (model[n] - pulse[n]) * (model[n] - pulse[n]);
  return s;
}

// 7. LF fit round trip and residual gradient check.
CriterionResult lf_round_trip() {
  CriterionResult r;
  constexpr int kCases = 100;
  constexpr int kGradientPoints = 20;
  std::mt19937_64 rng(707);
  const auto t0 = Clock::now();
  double worst_param = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const auto p = random_lf(rng);
    const auto fit = lf_fit(lf_synthesize(p, kRate), 1.0 / p.T0);
    const double truth[] = {p.t_o, p.t_p, p.t_e, p.t_a, p.E_e};
    const double got[] = {fit.params.t_o, fit.params.t_p, fit.params.t_e, fit.params.t_a, fit.params.E_e};
    for (int j = 0; j < 5; ++j) worst_param = std::max(worst_param, std::abs(got[j] / truth[j] - 1.0));
  }

  double worst_gradient = 0.0;
  for (int c = 0; c < kGradientPoints; ++c) {
    const auto target = random_lf(rng);
    auto at = target;
    at.t_o *= uniform(rng, 0.9, 1.1);
    at.t_p *= uniform(rng, 0.97, 1.03);
    at.t_a *= uniform(rng, 0.8, 1.2);
    at.E_e *= uniform(rng, 0.8, 1.2);
    if (!at.valid()) at = target;
    const auto pulse = lf_synthesize(target, kRate).samples();
    const auto jac = lf_residual_jacobian(pulse, kRate, at);
    double* fields[] = {&at.t_o, &at.t_p, &at.t_e, &at.t_a, &at.E_e};
    std::vector<double> numeric(5);
    for (int j = 0; j < 5; ++j) {
      const double x = *fields[j];
      const double h = 1e-6 * (j == 4 ? x : at.T0);
      *fields[j] = x + h;
      const double up = half_sum_squares(pulse, at);
      *fields[j] = x - h;
      const double down = half_sum_squares(pulse, at);
      *fields[j] = x;
      numeric[j] = (up - down) / (2.0 * h);
    }
    // Relative to each component's own scale, floored by the gradient norm.
    double norm = 0.0;
    for (double g : numeric) norm = std::max(norm, std::abs(g));
    for (int j = 0; j < 5; ++j) {
      const double scale = std::max(std::abs(numeric[j]), 1e-6 * norm);
      worst_gradient = std::max(worst_gradient, std::abs(jac.gradient[j] - numeric[j]) / scale);
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst_param <= 0.01 && worst_gradient <= 1e-4;
  r.detail = std::to_string(kCases) + " fits, max relative parameter error " + fmt(worst_param) + " (<= 0.01); " +
             std::to_string(kGradientPoints) + " gradient points, max relative mismatch " + fmt(worst_gradient) +
             " (<= 1e-4)";
  return r;
}

// 8. DECOM on synthetic EGG at 30 dB SNR.
CriterionResult decom_accuracy() {
  CriterionResult r;
  const auto t0 = Clock::now();
  std::ptrdiff_t worst_offset = 0;
  std::size_t missed = 0;
  std::size_t spurious = 0;
  double abs_oq_sum = 0.0;
  std::size_t oq_count = 0;
  std::uint64_t seed = 800;
  for (double f0 : {80.0, 120.0, 160.0, 220.0}) {
    for (double oq : {0.4, 0.5, 0.6, 0.7, 0.8}) {
      SynthSpec spec;
      spec.lf = sweep_lf_params(oq, f0);
      spec.f0_track = {f0};
      spec.formants = default_formants();
      spec.n_periods = 50;
      spec.egg_snr_db = 30.0;
      spec.seed = ++seed;
      const auto syn = synth_voice(spec);
      const auto detected = decom_detect(differentiate(syn.egg), 50.0, 500.0);
      const auto& truth = syn.truth_gcis.closures;
      for (auto t : truth) {
        const auto it = std::lower_bound(detected.closures.begin(), detected.closures.end(), t - 1);
        if (it == detected.closures.end() || *it > t + 1) ++missed;
      }
      for (auto d : detected.closures) {
        const auto it = std::lower_bound(truth.begin(), truth.end(), d);
        std::ptrdiff_t best = std::numeric_limits<std::ptrdiff_t>::max();
        if (it != truth.end()) best = std::min(best, *it - d);
        if (it != truth.begin()) best = std::min(best, d - *std::prev(it));
        if (best > 1) ++spurious;
        else worst_offset = std::max(worst_offset, best);
      }
      for (const auto& rec : egg_open_quotients(detected)) {
        abs_oq_sum += std::abs(rec.oq - oq);
        ++oq_count;
      }
    }
  }
  const double mean_oq = oq_count > 0 ? abs_oq_sum / static_cast<double>(oq_count) : INFINITY;
  r.seconds = seconds_since(t0);
  r.passed = missed == 0 && spurious == 0 && mean_oq <= 0.01;
  r.detail = "20 EGG trains: " + std::to_string(missed) + " missed and " + std::to_string(spurious) +
             " spurious GCIs beyond +-1 sample (0), max offset " + std::to_string(worst_offset) +
             ", mean |oq error| " + fmt(mean_oq) + " over " + std::to_string(oq_count) + " periods (<= 0.01)";
  return r;
}

SynthOutput one_second_voice() {
  SynthSpec spec;
  spec.lf = sweep_lf_params(0.6, 120.0);
  spec.f0_track = {120.0};
  spec.formants = default_formants();
  spec.n_periods = 120;
  spec.noise_snr_db = 40.0;
  spec.egg_snr_db = 40.0;
  spec.seed = 909;
  return synth_voice(spec);
}

// 9. One second of speech analysed in under five seconds on one thread.
CriterionResult throughput() {
  CriterionResult r;
  const auto syn = one_second_voice();
  PipelineConfig config;
  config.lp_order = 19;
  config.frame_ms = 25.0;
  SingleThreaded single;
  const auto t0 = Clock::now();
  const auto analysis = analyze_signals(syn.speech, syn.egg, config, {"lpcc"});
  r.seconds = seconds_since(t0);
  r.passed = r.seconds < 5.0 && !analysis.methods.front().estimate.pulses.empty();
  r.detail = fmt(syn.speech.duration()) + " s of speech, " + std::to_string(analysis.methods.front().estimate.pulses.size()) +
             " pulses analysed and fitted in " + fmt(r.seconds) + " s (< 5 s)";
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Two runs of synth + compare produce identical bytes.
CriterionResult determinism() {
  CriterionResult r;
  const auto t0 = Clock::now();
  TempDir tmp;
  std::ostringstream sink;
  std::vector<fs::path> runs;
  for (int run = 0; run < 2; ++run) {
    const auto dir = tmp.path() / ("run" + std::to_string(run));
    SynthRequest synth;
    synth.output_dir = dir / "synth";
    synth.periods = 60;
    synth.snr_db = 35.0;
    synth.egg_snr_db = 35.0;
    if (run_synth(synth, sink, sink) != kExitOk) throw AnalysisError("synth failed: " + sink.str());
    AnalyzeRequest analyze;
    analyze.input = synth.output_dir / "synth.wav";
    analyze.output_dir = dir / "compare";
    if (run_compare(analyze, sink, sink) != kExitOk) throw AnalysisError("compare failed: " + sink.str());
    runs.push_back(dir);
  }
  std::size_t files = 0;
  std::size_t differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(runs[0])) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), runs[0]);
    ++files;
    const auto other = runs[1] / rel;
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  r.seconds = seconds_since(t0);
  r.passed = files > 0 && differing == 0;
  r.detail = std::to_string(files) + " output files compared, " + std::to_string(differing) + " differ (0)";
  return r;
}

}  // namespace

const SweepReport& AcceptanceContext::sweep(double* seconds) {
  if (!sweep_) {
    SingleThreaded single;
    SweepOptions options;
    options.max_workers = 1;
    const auto t0 = Clock::now();
    sweep_ = run_sweep(options);
    sweep_seconds_ = seconds_since(t0);
  }
  if (seconds != nullptr) *seconds = sweep_seconds_;
  return *sweep_;
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "cepstrum oracle equivalence";
    case 2: return "odd-order real root";
    case 3: return "inverse-system identity";
    case 4: return "homomorphic round trip and additivity";
    case 5: return "end-to-end synthetic accuracy";
    case 6: return "method ordering by oq error variance";
    case 7: return "LF round trip and gradient";
    case 8: return "DECOM accuracy";
    case 9: return "throughput";
    case 10: return "determinism";
    default: throw ArgumentError("criterion must lie in 1.." + std::to_string(kCriterionCount));
  }
}

CriterionResult run_criterion(int id, AcceptanceContext& context) {
  const auto title = criterion_title(id);
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = cepstrum_oracle(); break;
      case 2: r = odd_order_real_root(); break;
      case 3: r = inverse_system_identity(); break;
      case 4: r = homomorphic_identities(); break;
      case 5: r = sweep_accuracy(context); break;
      case 6: r = method_ordering(context); break;
      case 7: r = lf_round_trip(); break;
      case 8: r = decom_accuracy(); break;
      case 9: r = throughput(); break;
      case 10: r = determinism(); break;
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
    r.seconds = seconds_since(t0);
  }
  r.id = id;
  r.title = title;
  return r;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream os;
  os << "criterion " << result.id << (result.id < 10 ? "  " : " ") << (result.passed ? "PASS" : "FAIL") << "  "
     << result.title << ": " << result.detail << " [" << fmt(result.seconds) << " s]";
  return os.str();
}

int run_selftest(const std::vector<int>& ids, std::ostream& out) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  }
  for (int id : todo) criterion_title(id);
  AcceptanceContext context;
  int failures = 0;
  for (int id : todo) {
    const auto result = run_criterion(id, context);
    out << format_result(result) << std::endl;
    if (!result.passed) ++failures;
  }
  out << (todo.size() - static_cast<std::size_t>(failures)) << "/" << todo.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace glottal::tools
