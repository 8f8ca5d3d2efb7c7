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

#include "glottal/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace glottal {

std::vector<double> LPModel::denominator() const {
  std::vector<double> d(coefficients.size() + 1);
  d[0] = 1.0;
  for (std::size_t m = 0; m < coefficients.size(); ++m) d[m + 1] = -coefficients[m];
  return d;
}

LPModel LPModel::from_denominator(std::span<const double> denominator) {
  if (denominator.empty() || denominator[0] == 0.0) {
    throw ArgumentError("denominator must start with a nonzero coefficient");
  }
  LPModel m;
  m.coefficients.resize(denominator.size() - 1);
  for (std::size_t i = 1; i < denominator.size(); ++i) {
    m.coefficients[i - 1] = -denominator[i] / denominator[0];
  }
  return m;
}

int PoleSet::counted_poles() const {
  return static_cast<int>(real_poles.size() + 2 * complex_pairs.size() +
                          2 * excluded_unstable.size());
}

int default_lp_order(double rate) {
  if (!(rate > 0.0)) throw ArgumentError("rate must be positive");
  int order = static_cast<int>(std::lround(rate / 1000.0)) + 3;
  if (order % 2 == 0) ++order;
  return order;
}

LPModel least_squares_lp(const Frame& frame, int order) {
  if (order < 1) throw ArgumentError("LP order must be positive");
  const auto n = static_cast<Eigen::Index>(frame.size());
  if (n <= 2 * order) {
    throw ArgumentError("frame of " + std::to_string(n) + " samples too short for order " +
                        std::to_string(order));
  }
  const Eigen::Index rows = n - order;
  Eigen::MatrixXd data(rows, order);
  Eigen::VectorXd target(rows);
  const auto& x = frame.samples;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = r + order;
    target(r) = x[t];
    for (int m = 1; m <= order; ++m) data(r, m - 1) = x[t - m];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data);
  qr.setThreshold(1e-10);
  if (qr.rank() < order) {
    throw NumericalError("rank-deficient LP data matrix (rank " + std::to_string(qr.rank()) +
                         " < " + std::to_string(order) + ") in frame starting at sample " +
                         std::to_string(frame.start_index));
  }
  const Eigen::VectorXd a = qr.solve(target);
  LPModel model;
  model.coefficients.assign(a.data(), a.data() + a.size());
  model.residual_energy = (target - data * a).squaredNorm();
  return model;
}

LPModel covariance_lp(const Frame& frame, int order) {
  if (order < 1 || order % 2 == 0) {
    throw ArgumentError("covariance LP order must be odd and positive, got " +
                        std::to_string(order));
  }
  return least_squares_lp(frame, order);
}

namespace {

// Parlett-Reinsch diagonal similarity balancing, radix 2.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double kRadix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadix * kRadix;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadix * kRadix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::string echo_polynomial(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << "]";
  return os.str();
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs_high_first) {
  std::size_t lead = 0;
  while (lead < coeffs_high_first.size() && coeffs_high_first[lead] == 0.0) ++lead;
  const auto p = coeffs_high_first.subspan(lead);
  if (p.size() <= 1) return {};
  const auto degree = static_cast<Eigen::Index>(p.size() - 1);

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (Eigen::Index j = 0; j < degree; ++j) companion(0, j) = -p[j + 1] / p[0];
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("companion eigensolver did not converge for polynomial " +
                         echo_polynomial(p));
  }
  std::vector<std::complex<double>> roots(solver.eigenvalues().data(),
                                          solver.eigenvalues().data() + degree);
  for (const auto& r : roots) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
      throw NumericalError("non-finite root for polynomial " + echo_polynomial(p));
    }
  }
  return roots;
}

PoleSet find_poles(const LPModel& model, Diagnostics* diag) {
  if (model.coefficients.empty()) throw ArgumentError("cannot root an empty LP model");
  // 1 - sum a_m z^-m = 0  <=>  z^p - a_1 z^(p-1) - ... - a_p = 0.
  const auto denom = model.denominator();
  const auto roots = polynomial_roots(denom);

  PoleSet poles;
  poles.source_order = model.order();
  // Roots at the origin come from a trailing zero coefficient; the companion
  // construction drops no degrees, so each is returned as an eigenvalue 0.
  for (const auto& r : roots) {
    const double tol = kRealPoleTolerance * (1.0 + std::abs(r));
    if (std::abs(r.imag()) <= tol) {
      poles.real_poles.push_back(r.real());
    } else if (r.imag() > 0.0) {
      if (std::abs(r) < 1.0) {
        poles.complex_pairs.push_back(r);
      } else {
        poles.excluded_unstable.push_back(r);
      }
    }
  }
  if (poles.counted_poles() != poles.source_order) {
    throw NumericalError("pole count " + std::to_string(poles.counted_poles()) +
                         " does not match order " + std::to_string(poles.source_order) +
                         " for polynomial " + echo_polynomial(denom));
  }
  std::sort(poles.real_poles.begin(), poles.real_poles.end());
  auto by_angle = [](const auto& a, const auto& b) { return std::arg(a) < std::arg(b); };
  std::sort(poles.complex_pairs.begin(), poles.complex_pairs.end(), by_angle);
  std::sort(poles.excluded_unstable.begin(), poles.excluded_unstable.end(), by_angle);

  const int half_order = (model.order() - 1) / 2;
  if (model.order() % 2 == 1 &&
      !(2 * static_cast<int>(poles.complex_pairs.size()) < half_order)) {
    warn(diag, "VTF keeps " + std::to_string(poles.complex_pairs.size()) +
                   " pole pairs; the 2l < M guideline for order " +
                   std::to_string(model.order()) + " is not met");
  }
  if (!poles.excluded_unstable.empty()) {
    warn(diag, std::to_string(poles.excluded_unstable.size()) +
                   " unstable complex pole pair(s) excluded from the VTF");
  }
  return poles;
}

LPModel vtf_from_poles(const PoleSet& poles) {
  if (poles.complex_pairs.empty()) {
    throw DegenerateInputError("no stable complex pole pairs: frame is likely unvoiced or silent");
  }
  std::vector<std::complex<double>> poly{1.0};
  auto multiply = [&poly](std::complex<double> root) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= root * poly[i];
    }
    poly = std::move(next);
  };
  for (const auto& p : poles.complex_pairs) {
    multiply(p);
    multiply(std::conj(p));
  }
  double max_mag = 0.0;
  double max_imag = 0.0;
  std::vector<double> denom(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    max_mag = std::max(max_mag, std::abs(poly[i].real()));
    max_imag = std::max(max_imag, std::abs(poly[i].imag()));
    denom[i] = poly[i].real();
  }
  if (max_imag >= 1e-12 * (1.0 + max_mag)) {
    throw NumericalError("VTF polynomial is not real (imaginary residue " +
                         std::to_string(max_imag) + ")");
  }
  return LPModel::from_denominator(denom);
}

std::vector<std::pair<double, double>> vtf_spectrum(const LPModel& vtf, int nfft, double rate,
                                                    Diagnostics* diag) {
  if (nfft < 2 || (nfft & (nfft - 1)) != 0) throw ArgumentError("nfft must be a power of two");
  if (nfft < 2 * vtf.order()) throw ArgumentError("nfft must be at least twice the model order");
  const auto denom = vtf.denominator();
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(nfft / 2 + 1));
  constexpr double kMaxDb = 200.0;
  for (int k = 0; k <= nfft / 2; ++k) {
    const double w = 2.0 * std::numbers::pi * k / nfft;
    std::complex<double> d = 0.0;
    for (std::size_t m = 0; m < denom.size(); ++m) {
      d += denom[m] * std::polar(1.0, -w * static_cast<double>(m));
    }
    double db = -20.0 * std::log10(std::abs(d));
    if (!(db <= kMaxDb)) {
      warn(diag, "VTF magnitude clamped at bin " + std::to_string(k));
      db = kMaxDb;
    }
    out.emplace_back(rate * k / nfft, db);
  }
  return out;
}

SampledSignal inverse_filter(const SampledSignal& signal, const LPModel& vtf, double lip_alpha) {
  if (!(lip_alpha > 0.0 && lip_alpha <= 1.0)) {
    throw ArgumentError("lip_alpha must lie in (0, 1]");
  }
  const auto denom = vtf.denominator();
  auto residual = fir_filter(denom, signal.samples());
  return leaky_integrate(SampledSignal(std::move(residual), signal.rate()), lip_alpha);
}

}  // namespace glottal
