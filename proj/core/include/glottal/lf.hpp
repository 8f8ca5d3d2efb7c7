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

// Liljencrants-Fant glottal flow derivative: synthesis, fitting and open quotient.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glottal/signal.hpp"

namespace glottal {

/// Timing parameters in seconds, measured from the start of the period.
///
/// The derivative is zero before t_o, an exponentially growing sinusoid on
/// [t_o, t_e] that crosses zero at t_p and reaches -E_e at t_e, and an
/// exponential return phase on (t_e, T0] with time constant t_a.
struct LFParams {
  double t_o = 0.0;
  double t_p = 0.0;
  double t_e = 0.0;
  double t_a = 0.0;
  double T0 = 0.0;
  double E_e = 1.0;

  /// Empty when valid, otherwise a description of the violated constraint.
  std::string validation_error() const;
  bool valid() const { return validation_error().empty(); }
};

/// Solved shape constants of a parameter set.
struct LFShape {
  double alpha = 0.0;    ///< open-phase growth rate (1/s), zero net flow
  double epsilon = 0.0;  ///< return-phase decay rate (1/s)
};

/// Solves the return-phase and zero-net-flow equations for `p`.
LFShape lf_shape(const LFParams& p);

/// Continuous-time value of the derivative at time t in [0, T0).
double lf_value(const LFParams& p, const LFShape& shape, double t);

/// One period sampled at n / rate for n = 0 .. round(T0 * rate) - 1.
SampledSignal lf_synthesize(const LFParams& params, double rate);

/// Samples the period onto `count` points (zero past T0).
std::vector<double> lf_sample(const LFParams& params, double rate, std::size_t count);

/// f0 * (t_e - t_o). Throws when the result is outside (0, 1).
double open_quotient(const LFParams& params, double f0);

struct FitResult {
  LFParams params;
  double residual_nrmse = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct LFFitOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
  /// Number of onset guesses spread over the admissible range.
  int onset_starts = 5;
};

/// Least-squares fit of the LF derivative to one period of `pulse`.
/// The period is fixed to 1 / f0; the fitted parameters are t_o, t_p, t_e,
/// t_a and E_e.
FitResult lf_fit(const SampledSignal& pulse, double f0,
                 const std::optional<LFParams>& init = std::nullopt,
                 const LFFitOptions& options = {});

/// Residual model - pulse and its Jacobian with respect to
/// (t_o, t_p, t_e, t_a, E_e), evaluated by forward-mode differentiation
/// through the same code path the fitter uses. Row-major, 5 columns.
struct LFJacobian {
  std::vector<double> residual;
  std::vector<double> jacobian;
  /// J^T r.
  std::vector<double> gradient;
};

LFJacobian lf_residual_jacobian(std::span<const double> pulse, double rate, const LFParams& params);

}  // namespace glottal
