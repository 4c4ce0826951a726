// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace whrflab::numeric {

// log(sum_i exp(args[i])) with the usual max shift. -inf entries are allowed
// and contribute nothing; an all(-inf) input returns -inf.
double log_sum_exp(const std::vector<double>& args);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// Series for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// CDF of Gamma(shape k, scale theta).
double gamma_cdf(double x, double shape, double scale);

// Two-sided Kolmogorov-Smirnov statistic of `samples` against a CDF.
// Samples need not be sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Asymptotic KS tail probability Q(sqrt(n) * d).
double ks_p_value(double d, std::size_t n);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t dof = 0;
};

// Goodness-of-fit of observed counts against expected counts.
ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // unbiased

// Trapezoid integral of y over x (ascending grid).
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace whrflab::numeric
