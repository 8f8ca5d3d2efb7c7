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

// Scalar-generic LF evaluation shared by synthesis (double) and fitting (jets).

#pragma once

#include <cmath>
#include <numbers>

#include "glottal/lf.hpp"

namespace glottal::detail {

inline double scalar_value(double x) { return x; }
template <typename Jet>
double scalar_value(const Jet& x) {
  return x.a;
}

inline bool is_finite(double x) { return std::isfinite(x); }
template <typename Jet>
bool is_finite(const Jet& x) {
  return std::isfinite(x.a) && x.v.allFinite();
}

// Net flow of the open phase divided by E_e, for open duration `open`
// (t_e - t_o) and sinusoid frequency `omega`.
template <typename T>
T open_phase_area(const T& alpha, const T& omega, const T& open) {
  using std::cos;
  using std::exp;
  using std::sin;
  const T s = sin(omega * open);
  const T c = cos(omega * open);
  return -(alpha * s - omega * c + omega * exp(-alpha * open)) /
         ((alpha * alpha + omega * omega) * s);
}

// Net flow of the return phase divided by E_e.
template <typename T>
T return_phase_area(const T& epsilon, const T& ta, const T& closing) {
  using std::exp;
  return -1.0 / epsilon + closing * exp(-epsilon * closing) / (epsilon * ta);
}

template <typename T>
T epsilon_equation(const T& epsilon, const T& ta, const T& closing) {
  using std::exp;
  return epsilon * ta - 1.0 + exp(-epsilon * closing);
}

template <typename T>
struct ShapeT {
  T alpha;
  T epsilon;
  T omega;
};

// Lifts the double-precision roots to T with one Newton step, which carries
// first derivatives of the implicit solutions (the residual is ~0 at the root).
template <typename T>
ShapeT<T> lift_shape(const T& to, const T& tp, const T& te, const T& ta, double T0,
                     const LFShape& root) {
  const T open = te - to;
  const T closing = T0 - te;
  const T omega = std::numbers::pi / (tp - to);

  const double ta_v = scalar_value(ta);
  const double cl_v = scalar_value(closing);
  const double de_v = ta_v - cl_v * std::exp(-root.epsilon * cl_v);
  const T epsilon = root.epsilon - epsilon_equation(T(root.epsilon), ta, closing) / de_v;

  const double om_v = scalar_value(omega);
  const double op_v = scalar_value(open);
  const double h = 1e-6 * (std::abs(root.alpha) + 1.0 / op_v);
  const double da_v =
      (open_phase_area(root.alpha + h, om_v, op_v) - open_phase_area(root.alpha - h, om_v, op_v)) /
      (2.0 * h);
  const T area = open_phase_area(T(root.alpha), omega, open) + return_phase_area(epsilon, ta, closing);
  const T alpha = root.alpha - area / da_v;
  return {alpha, epsilon, omega};
}

template <typename T>
T lf_eval(const T& to, const T& te, const T& ta, const T& ee, double T0,
          const ShapeT<T>& shape, double t) {
  using std::exp;
  using std::sin;
  if (t < scalar_value(to) || t >= T0) return T(0.0);
  if (t <= scalar_value(te)) {
    const T tau = t - to;
    const T open = te - to;
    return -ee * exp(shape.alpha * (tau - open)) * sin(shape.omega * tau) /
           sin(shape.omega * open);
  }
  return -(ee / (shape.epsilon * ta)) *
         (exp(-shape.epsilon * (t - te)) - exp(-shape.epsilon * (T0 - te)));
}

}  // namespace glottal::detail
