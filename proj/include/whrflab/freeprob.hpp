// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace whrflab::freeprob {

using cplx = std::complex<double>;

// Limiting spectral law parameters: overparameterization factor gamma = p/2m,
// multiplicity r, conditioning energy x (alias E in band computations).
struct FreeModelParams {
  double gamma = 0.1;
  int r = 1;
  double x = 0.0;

  void validate() const;
};

// Density samples on an ascending grid plus point atoms.
struct SpectralMeasure {
  std::vector<double> grid;
  std::vector<double> density;
  struct Atom {
    double location = 0.0;
    double mass = 0.0;
  };
  std::vector<Atom> atoms;

  double continuous_mass() const;
  double total_mass() const;
  double cdf(double lambda) const;
  // Integral of f against the measure (trapezoid on the grid + atoms).
  double integrate(const std::function<double(double)>& f) const;
  double support_min() const;  // smallest grid point with density > threshold, or atom
  double support_max() const;
};

// Roots of a*t^3 + b*t^2 + c*t + d = 0 over the complex numbers (Cardano with
// a Newton polish). Degenerates to the quadratic/linear formula when leading
// coefficients vanish.
std::vector<cplx> solve_cubic(cplx a, cplx b, cplx c, cplx d);

// Coefficients of the implicit equation satisfied by the Stieltjes transform
// of the limit law: a G^3 + b G^2 + c G + d = 0.
struct CubicCoeffs {
  cplx a, b, c, d;
};
CubicCoeffs stieltjes_cubic_coeffs(cplx z, const FreeModelParams& params);

// Stieltjes transform of the limit law at z (Im z > 0 for inversion use).
// Picks the root with the smallest (most negative) imaginary part; at x = 0
// the equation degenerates to a quadratic handled in closed form.
cplx stieltjes(cplx z, const FreeModelParams& params);

// All candidate roots at z (for branch-tracking diagnostics).
std::vector<cplx> stieltjes_roots(cplx z, const FreeModelParams& params);

struct GridSpec {
  int points = 4000;        // base grid resolution across the support
  double eps_a = 1e-6;      // two imaginary offsets, Richardson-extrapolated
  double eps_b = 1e-7;
  double tail_threshold = 1e-8;
  int edge_refine = 200;    // extra geometric points clustered at each edge
};

// Pointwise -Im G(lambda + i eps)/pi with eps -> 0 extrapolation; the grid
// auto-expands until the density falls below tail_threshold at both ends.
// For gamma > 1 at x = 0 the missing mass is restored as an atom at zero.
SpectralMeasure density(const FreeModelParams& params, const GridSpec& grid = {});

// Infimum of the support. Grid locator refined by bisection on the
// sign change of the cubic discriminant (real-root-count transition).
double support_edge_min(const FreeModelParams& params);

// Largest energy admitting local minima: solves lambda_min(E) = 2 r E.
// Empty when gamma >= 1 (no positive-energy critical points).
std::optional<double> band_edge_e0(double gamma, int r);

// Per-parameter logarithmic density of local minima at energy E in the
// p -> infinity limit; -inf outside the band. q is the total rotation count.
double asymptotic_log_crt0(double e, double gamma, int r, double q);

// Fills `out` with the density along `grid` using nearest-root continuation
// instead of the per-point rule; returns the largest in-support root jump.
// Used to cross-check branch selection.
double tracked_density(const FreeModelParams& params, const GridSpec& gs,
                       const std::vector<double>& grid, std::vector<double>& out);

// Closed forms used as solver degenerations and test oracles.
SpectralMeasure mp_density(double gamma, int points = 4000);
double mp_density_at(double lambda, double gamma);
SpectralMeasure sc_density(int points = 4000);
double sc_density_at(double lambda);

}  // namespace whrflab::freeprob
