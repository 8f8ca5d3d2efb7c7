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

// All-pole linear prediction: least-squares estimation, pole classification,
// vocal-tract reconstruction from complex pole pairs and FIR inverse filtering.

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "glottal/errors.hpp"
#include "glottal/signal.hpp"

namespace glottal {

/// All-pole model 1 / (1 - sum_m a_m z^-m). `coefficients` holds a_1..a_p.
struct LPModel {
  std::vector<double> coefficients;
  double residual_energy = 0.0;

  int order() const { return static_cast<int>(coefficients.size()); }

  /// Denominator polynomial [1, -a_1, ..., -a_p] in powers of z^-1.
  std::vector<double> denominator() const;

  static LPModel from_denominator(std::span<const double> denominator);
};

/// Roots of an LP denominator split by kind. Each complex entry stands for a
/// conjugate pair and is stored with positive imaginary part.
struct PoleSet {
  std::vector<double> real_poles;
  std::vector<std::complex<double>> complex_pairs;
  std::vector<std::complex<double>> excluded_unstable;
  int source_order = 0;

  /// Pair-weighted pole count; equals source_order.
  int counted_poles() const;
};

/// Imaginary-part tolerance below which a root is treated as real.
inline constexpr double kRealPoleTolerance = 1e-7;

/// Model order used when none is configured: round(fs / 1000) + 3, bumped to odd.
int default_lp_order(double rate);

/// Least-squares (covariance method) predictor of arbitrary order. The data
/// matrix is built from shifted copies of the frame without windowing.
LPModel least_squares_lp(const Frame& frame, int order);

/// Covariance-method LP for odd orders.
LPModel covariance_lp(const Frame& frame, int order);

/// All roots of a polynomial given highest power first via a balanced companion matrix.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs_high_first);

PoleSet find_poles(const LPModel& model, Diagnostics* diag = nullptr);

/// Even-order model built from the stable complex pairs only.
LPModel vtf_from_poles(const PoleSet& poles);

/// (frequency in Hz, magnitude in dB) on nfft/2 + 1 points of the upper semicircle.
std::vector<std::pair<double, double>> vtf_spectrum(const LPModel& vtf, int nfft, double rate,
                                                    Diagnostics* diag = nullptr);

/// FIR inverse filter by the VTF denominator followed by lip-radiation cancellation.
SampledSignal inverse_filter(const SampledSignal& signal, const LPModel& vtf, double lip_alpha);

}  // namespace glottal
