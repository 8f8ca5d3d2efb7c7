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

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "glottal/errors.hpp"
#include "glottal/lf.hpp"
#include "lf_detail.hpp"

namespace glottal {

std::string LFParams::validation_error() const {
  std::ostringstream os;
  for (double v : {t_o, t_p, t_e, t_a, T0, E_e}) {
    if (!std::isfinite(v)) return "non-finite LF parameter";
  }
  if (!(T0 > 0.0)) os << "T0 must be positive";
  else if (!(t_o >= 0.0)) os << "t_o must be >= 0";
  else if (!(t_o < t_p)) os << "t_o must precede t_p";
  else if (!(t_p < t_e)) os << "t_p must precede t_e";
  else if (!(t_a > 0.0)) os << "t_a must be positive";
  else if (!(t_e + t_a < T0)) os << "t_e + t_a must be below T0";
  else if (!(t_e - t_o < 2.0 * (t_p - t_o))) os << "t_e must fall within the negative lobe (t_e - t_o < 2 (t_p - t_o))";
  else if (!(E_e > 0.0)) os << "E_e must be positive";
  return os.str();
}

namespace {

double solve_epsilon(double ta, double closing) {
  auto g = [&](double e) { return detail::epsilon_equation(e, ta, closing); };
  double hi = 1.0 / ta;
  double lo = (closing - ta) / (closing * closing);
  if (g(hi) <= 0.0) {
    // Happens only when e^{-closing/ta} underflows to exactly zero.
    return hi;
  }
  int guard = 0;
  while (g(lo) >= 0.0 && ++guard < 200) lo *= 0.5;
  if (g(lo) >= 0.0) throw NumericalError("return-phase equation has no bracket; t_a too close to T0 - t_e");
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) throw NumericalError("return-phase equation did not converge");
  return 0.5 * (r.first + r.second);
}

double solve_alpha(double omega, double open, double return_area) {
  auto f = [&](double a) { return detail::open_phase_area(a, omega, open) + return_area; };
  double lo = -1.0 / open;
  double hi = 1.0 / open;
  int guard = 0;
  while (f(lo) <= 0.0 && ++guard < 60) {
    lo *= 2.0;
    if (lo * open < -600.0) break;
  }
  guard = 0;
  while (f(hi) >= 0.0 && ++guard < 60) hi *= 2.0;
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) {
    throw NumericalError("zero-net-flow equation for the open phase has no bracket");
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) throw NumericalError("zero-net-flow equation did not converge");
  return 0.5 * (r.first + r.second);
}

}  // namespace

LFShape lf_shape(const LFParams& p) {
  if (const auto err = p.validation_error(); !err.empty()) throw ArgumentError("invalid LF parameters: " + err);
  LFShape s;
  const double closing = p.T0 - p.t_e;
  s.epsilon = solve_epsilon(p.t_a, closing);
  const double omega = std::numbers::pi / (p.t_p - p.t_o);
  s.alpha = solve_alpha(omega, p.t_e - p.t_o, detail::return_phase_area(s.epsilon, p.t_a, closing));
  return s;
}

double lf_value(const LFParams& p, const LFShape& shape, double t) {
  const detail::ShapeT<double> s{shape.alpha, shape.epsilon, std::numbers::pi / (p.t_p - p.t_o)};
  return detail::lf_eval(p.t_o, p.t_e, p.t_a, p.E_e, p.T0, s, t);
}

std::vector<double> lf_sample(const LFParams& params, double rate, std::size_t count) {
  if (!(rate > 0.0)) throw ArgumentError("rate must be positive");
  const LFShape shape = lf_shape(params);
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = lf_value(params, shape, static_cast<double>(n) / rate);
  }
  return out;
}

SampledSignal lf_synthesize(const LFParams& params, double rate) {
  if (!(rate > 0.0)) throw ArgumentError("rate must be positive");
  if (rate * params.T0 < 16.0) throw ArgumentError("LF period must span at least 16 samples");
  const auto count = static_cast<std::size_t>(std::llround(params.T0 * rate));
  return SampledSignal(lf_sample(params, rate, count), rate);
}

double open_quotient(const LFParams& params, double f0) {
  if (!(f0 > 0.0)) throw ArgumentError("f0 must be positive");
  const double oq = f0 * (params.t_e - params.t_o);
  constexpr double kMargin = 1e-9;
  if (!(oq > kMargin && oq < 1.0 - kMargin)) {
    std::ostringstream os;
    os << "implausible open quotient " << oq;
    throw ArgumentError(os.str());
  }
  return oq;
}

}  // namespace glottal
