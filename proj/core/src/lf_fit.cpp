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

#include <ceres/ceres.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "glottal/errors.hpp"
#include "glottal/lf.hpp"
#include "lf_detail.hpp"

namespace glottal {

namespace {

constexpr int kNumParams = 5;

// Samples the LF derivative for physical parameters of any scalar type.
// Returns false when the implicit equations cannot be solved.
template <typename T>
bool lf_residuals(const T& to, const T& tp, const T& te, const T& ta, const T& ee,
                  std::span<const double> pulse, double rate, double T0, T* residuals) {
  LFParams value;
  value.t_o = detail::scalar_value(to);
  value.t_p = detail::scalar_value(tp);
  value.t_e = detail::scalar_value(te);
  value.t_a = detail::scalar_value(ta);
  value.E_e = detail::scalar_value(ee);
  value.T0 = T0;
  if (!value.valid()) return false;
  LFShape root;
  try {
    root = lf_shape(value);
  } catch (const Error&) {
    return false;
  }
  const auto shape = detail::lift_shape(to, tp, te, ta, T0, root);
  if (!detail::is_finite(shape.alpha) || !detail::is_finite(shape.epsilon)) return false;
  for (std::size_t n = 0; n < pulse.size(); ++n) {
    const double t = static_cast<double>(n) / rate;
    residuals[n] = detail::lf_eval(to, te, ta, ee, T0, shape, t) - pulse[n];
    if (!detail::is_finite(residuals[n])) return false;
  }
  return true;
}

// Written per sign so neither branch overflows (an overflowing exp gives
// inf/inf in the jet derivative).
template <typename T>
T sigmoid(const T& u) {
  using std::exp;
  if (detail::scalar_value(u) >= 0.0) return 1.0 / (1.0 + exp(-u));
  const T e = exp(u);
  return e / (1.0 + e);
}

double logit(double f) {
  f = std::clamp(f, 1e-6, 1.0 - 1e-6);
  return std::log(f / (1.0 - f));
}

// Unconstrained coordinates u -> ordered physical parameters:
//   t_e = T0 s(u0), t_o = t_e s(u1), t_p = t_o + (t_e - t_o)(1 + s(u2)) / 2,
//   t_a = (T0 - t_e) s(u3), E_e = exp(u4).
template <typename T>
std::array<T, kNumParams> to_physical(const T* u, double T0) {
  using std::exp;
  const T te = T0 * sigmoid(u[0]);
  const T to = te * sigmoid(u[1]);
  const T tp = to + (te - to) * (0.5 + 0.5 * sigmoid(u[2]));
  const T ta = (T0 - te) * sigmoid(u[3]);
  const T ee = exp(u[4]);
  return {to, tp, te, ta, ee};
}

std::array<double, kNumParams> to_unconstrained(const LFParams& p) {
  return {logit(p.t_e / p.T0), logit(p.t_o / p.t_e), logit(2.0 * (p.t_p - p.t_o) / (p.t_e - p.t_o) - 1.0),
          logit(p.t_a / (p.T0 - p.t_e)), std::log(p.E_e)};
}

LFParams from_unconstrained(const double* u, double T0) {
  const auto phys = to_physical(u, T0);
  LFParams p;
  p.t_o = phys[0];
  p.t_p = phys[1];
  p.t_e = phys[2];
  p.t_a = phys[3];
  p.E_e = phys[4];
  p.T0 = T0;
  return p;
}

struct TransformedResidual {
  std::span<const double> pulse;
  double rate;
  double T0;

  template <typename T>
  bool operator()(T const* const* params, T* residuals) const {
    const auto p = to_physical(params[0], T0);
    return lf_residuals(p[0], p[1], p[2], p[3], p[4], pulse, rate, T0, residuals);
  }
};

struct PhysicalResidual {
  std::span<const double> pulse;
  double rate;
  double T0;

  template <typename T>
  bool operator()(T const* const* params, T* residuals) const {
    const T* p = params[0];
    return lf_residuals(p[0], p[1], p[2], p[3], p[4], pulse, rate, T0, residuals);
  }
};

template <typename Functor>
std::unique_ptr<ceres::DynamicAutoDiffCostFunction<Functor, kNumParams>> make_cost(
    std::span<const double> pulse, double rate, double T0) {
  auto cost = std::make_unique<ceres::DynamicAutoDiffCostFunction<Functor, kNumParams>>(
      new Functor{pulse, rate, T0});
  cost->AddParameterBlock(kNumParams);
  cost->SetNumResiduals(static_cast<int>(pulse.size()));
  return cost;
}

// Starting points from waveform landmarks: t_e at the negative peak, t_p at
// the preceding zero crossing and a grid of onsets before t_p.
std::vector<LFParams> landmark_starts(std::span<const double> x, double rate, double T0,
                                      int onset_starts) {
  const auto period_samples = std::min<std::size_t>(x.size(), static_cast<std::size_t>(std::floor(T0 * rate)));
  const auto peak = static_cast<std::size_t>(
      std::min_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(period_samples)) - x.begin());
  const double ee = -x[peak];
  if (!(ee > 0.0)) throw DegenerateInputError("pulse has no negative peak to anchor t_e");

  double te = static_cast<double>(peak) / rate;
  te = std::clamp(te, 0.2 * T0, T0 - 2.0 / rate);

  double tp = -1.0;
  for (std::size_t i = peak; i-- > 0;) {
    if (x[i] >= 0.0) {
      const double frac = x[i] / (x[i] - x[i + 1]);
      tp = (static_cast<double>(i) + frac) / rate;
      break;
    }
  }
  if (!(tp > 0.0 && tp < te)) tp = 0.7 * te;
  tp = std::clamp(tp, 0.55 * te, 0.97 * te);

  const double onset_hi = std::min(tp, 2.0 * tp - te);
  const double ta = std::clamp(0.02 * T0, 1.0 / rate, 0.5 * (T0 - te));

  std::vector<LFParams> starts;
  for (int k = 0; k < onset_starts; ++k) {
    LFParams p;
    p.t_o = onset_hi * (k + 0.5) / onset_starts;
    p.t_p = tp;
    p.t_e = te;
    p.t_a = ta;
    p.T0 = T0;
    p.E_e = ee;
    if (p.valid()) starts.push_back(p);
  }
  return starts;
}

}  // namespace

FitResult lf_fit(const SampledSignal& pulse, double f0, const std::optional<LFParams>& init,
                 const LFFitOptions& options) {
  if (!(f0 > 0.0)) throw ArgumentError("f0 must be positive");
  const double rate = pulse.rate();
  const double T0 = 1.0 / f0;
  const double length_s = static_cast<double>(pulse.size()) / rate;
  if (std::abs(length_s - T0) > 0.2 * T0) {
    throw ArgumentError("pulse length is inconsistent with f0 by more than 20%");
  }
  if (pulse.size() < 16) throw ArgumentError("pulse must have at least 16 samples");
  const std::span<const double> x(pulse.samples());

  std::vector<LFParams> starts;
  if (init && init->valid() && std::abs(init->T0 - T0) < 1e-12 * T0) starts.push_back(*init);
  for (const auto& s : landmark_starts(x, rate, T0, std::max(options.onset_starts, 5))) starts.push_back(s);

  double pulse_energy = 0.0;
  for (double v : x) pulse_energy += v * v;
  const double pulse_rms = std::sqrt(pulse_energy / static_cast<double>(x.size()));

  ceres::Solver::Options solver_options;
  solver_options.linear_solver_type = ceres::DENSE_QR;
  solver_options.max_num_iterations = options.max_iterations;
  solver_options.gradient_tolerance = options.gradient_tolerance;
  solver_options.function_tolerance = 1e-15;
  solver_options.parameter_tolerance = 1e-12;
  solver_options.logging_type = ceres::SILENT;
  solver_options.num_threads = 1;

  FitResult best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::string last_failure = "no admissible starting point";
  for (const auto& start : starts) {
    auto u = to_unconstrained(start);
    ceres::Problem::Options problem_options;
    problem_options.cost_function_ownership = ceres::TAKE_OWNERSHIP;
    ceres::Problem problem(problem_options);
    problem.AddResidualBlock(make_cost<TransformedResidual>(x, rate, T0).release(), nullptr, u.data());
    ceres::Solver::Summary summary;
    ceres::Solve(solver_options, &problem, &summary);
    if (!summary.IsSolutionUsable() || !std::isfinite(summary.final_cost)) {
      last_failure = summary.message;
      continue;
    }
    if (summary.final_cost < best_cost) {
      best_cost = summary.final_cost;
      best.params = from_unconstrained(u.data(), T0);
      best.iterations = static_cast<int>(summary.iterations.size());
      best.converged = summary.termination_type == ceres::CONVERGENCE;
    }
  }
  if (!std::isfinite(best_cost)) {
    throw NumericalError("LF fit failed from every start: " + last_failure);
  }
  const double rms = std::sqrt(2.0 * best_cost / static_cast<double>(x.size()));
  best.residual_nrmse = pulse_rms > 0.0 ? rms / pulse_rms : rms;
  return best;
}

LFJacobian lf_residual_jacobian(std::span<const double> pulse, double rate, const LFParams& params) {
  if (const auto err = params.validation_error(); !err.empty()) {
    throw ArgumentError("invalid LF parameters: " + err);
  }
  auto cost = make_cost<PhysicalResidual>(pulse, rate, params.T0);
  const std::array<double, kNumParams> p{params.t_o, params.t_p, params.t_e, params.t_a, params.E_e};
  const double* blocks[] = {p.data()};
  LFJacobian out;
  out.residual.resize(pulse.size());
  out.jacobian.resize(pulse.size() * kNumParams);
  double* jac_blocks[] = {out.jacobian.data()};
  if (!cost->Evaluate(blocks, out.residual.data(), jac_blocks)) {
    throw NumericalError("LF residual evaluation failed");
  }
  out.gradient.assign(kNumParams, 0.0);
  for (std::size_t n = 0; n < pulse.size(); ++n) {
    for (int j = 0; j < kNumParams; ++j) out.gradient[j] += out.jacobian[n * kNumParams + j] * out.residual[n];
  }
  return out;
}

}  // namespace glottal
