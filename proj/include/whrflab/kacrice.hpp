// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "whrflab/randmat.hpp"

namespace whrflab::kacrice {

// Monte Carlo estimate of ln E[Crt_k(E)], the expected count of critical
// points of index k at normalized energy E.
struct CrtEstimate {
  double e = 0.0;
  int k = 0;
  double log_value = 0.0;  // -inf when every trial fails the indicator
  double mc_std_error = 0.0;
  long trials = 0;
  double acceptance_fraction = 0.0;
};

// Critical-point Hessian sample at loss value x:
//   C~(x) = -2 r x I + (r/m)(W + sqrt(2 m x) N)
// with W ~ Wishart_p(2m, I) and N ~ GOE_p independent.
Eigen::MatrixXd hessian_closed_form_sample(double x, int p, double m, int r,
                                           rng::Engine& eng);

// ln E[Crt_k(E)] with the eigenvalue functional estimated by plain Monte
// Carlo over C(E) spectra; each trial contributes
// sum_i ln|lambda_i - 2rE| when lambda_{k+1} >= 2rE and -inf otherwise,
// combined by log-sum-exp. Analytic prefactors use the real m.
CrtEstimate log_crt_k_mc(double e, int k, int p, double m, int r, long trials,
                         std::uint64_t seed);

struct BandPoint {
  CrtEstimate estimate;
};

struct BandProfile {
  std::vector<CrtEstimate> points;
  double empirical_band_edge = 0.0;  // last energy with nonzero acceptance
  bool any_accepted = false;
};

BandProfile crt_band_profile(int k, int p, double m, int r,
                             const std::vector<double>& e_grid, long trials,
                             std::uint64_t seed);

}  // namespace whrflab::kacrice
