// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace whrflab::numeric {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double log_sum_exp(const std::vector<double>& args) {
  if (args.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  double max_arg = -kInf;
  for (double a : args) max_arg = std::max(max_arg, a);
  if (max_arg == -kInf) return -kInf;
  double sum = 0.0;
  for (double a : args) sum += std::exp(a - max_arg);
  return max_arg + std::log(sum);
}

// Lower incomplete gamma by series expansion, valid for x < a+1.
static double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a+1.
static double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double gamma_cdf(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return gamma_p(shape, x / scale);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  const double t = (std::sqrt(static_cast<double>(n)) + 0.12 +
                    0.11 / std::sqrt(static_cast<double>(n))) *
                   d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * t * t);
    sum += term;
    if (std::fabs(term) < 1e-12 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_test: size mismatch");
  }
  ChiSquareResult r;
  r.dof = observed.size() - 1;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_test: zero expectation");
    const double diff = observed[i] - expected[i];
    r.statistic += diff * diff / expected[i];
  }
  r.p_value = gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.statistic);
  return r;
}

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance: need at least two samples");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("trapezoid: bad grid");
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return s;
}

}  // namespace whrflab::numeric
