// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "whrflab/rng.hpp"

namespace whrflab {

// Parameters of the conditioned-Hessian ensemble C(x) = (r/m)(W + sqrt(2mx)N)
// with W ~ Wishart_p(2m, I) and N ~ GOE_p. m is a real number; only the
// Wishart sampler rounds 2m to an integer degree-of-freedom count.
struct EnsembleParams {
  int p = 1;
  double m = 1.0;
  int r = 1;
  double x = 0.0;

  double gamma() const { return static_cast<double>(p) / (2.0 * m); }
  long wishart_dof() const;
  void validate() const;
};

// Symmetric, diagonal entries N(0,2), off-diagonal N(0,1).
Eigen::MatrixXd sample_goe(int p, rng::Engine& eng);

// G * G^T with G a p x dof matrix of i.i.d. standard normals.
Eigen::MatrixXd sample_wishart_real(int p, long dof, rng::Engine& eng);

struct CParts {
  Eigen::MatrixXd wishart;
  Eigen::MatrixXd goe;
};
CParts sample_c_parts(const EnsembleParams& params, rng::Engine& eng);

// (r/m)(W + sqrt(2 m x) N) at the given conditioning energy.
Eigen::MatrixXd assemble_c(const CParts& parts, const EnsembleParams& params, double x);

Eigen::MatrixXd sample_c(const EnsembleParams& params, rng::Engine& eng);

// Ascending eigenvalues of a symmetric matrix.
std::vector<double> eigenvalues_sym(const Eigen::MatrixXd& m);

// Loss value at the north pole of the field from its Gaussian factors alone
// (only the one factor row entering the value is drawn).
double whrf_loss_draw(long m, rng::Engine& eng);

// Wishart hypertoroidal random field on p circle coordinates with
// multiplicity r, built from explicit Gaussian factors X (rows indexed by
// cos/sin choice patterns over the q = p*r slots, m columns):
//
//   F(theta) = |X^dag v(theta)|^2 / m,   v = tensor product of (cos, sin) pairs.
//
// Gradient and Hessian at theta = 0 are evaluated from the entries of
// J = X X^dag; the critical-point Hessian applies the exact Gaussian
// conditioning of the gradient to zero (group-centred projections onto the
// value-bearing row).
class WhrfField {
 public:
  // full_rows = true materialises all 2^q factor rows so value(theta) is
  // available (q <= 20); otherwise only the rows entering the value, gradient
  // and Hessian at the origin are drawn (q <= 26).
  WhrfField(int p, int r, long m, rng::Engine& eng, bool full_rows = false);

  int p() const { return p_; }
  int r() const { return r_; }
  long m() const { return m_; }
  int q() const { return p_ * r_; }

  double loss_at_origin() const;
  Eigen::VectorXd gradient_at_origin() const;
  // condition_on_critical = true returns a sample of the Hessian conditioned
  // on (F = loss_at_origin, grad F = 0); false returns the raw Hessian of
  // this draw.
  Eigen::MatrixXd hessian_at_origin(bool condition_on_critical) const;

  double value(const Eigen::VectorXd& theta) const;  // requires full_rows

 private:
  int slot(int param, int copy) const { return copy * p_ + param; }
  std::complex<double> j_entry(std::uint32_t pat_a, std::uint32_t pat_b) const;
  Eigen::MatrixXd hessian_from_rows(const std::vector<Eigen::VectorXcd>& singles) const;

  int p_;
  int r_;
  long m_;
  bool full_;
  Eigen::MatrixXcd rows_;                 // one factor row per stored pattern
  std::vector<std::uint32_t> patterns_;   // pattern of rows_ row i
  std::vector<int> pattern_index_;        // pattern -> rows_ row, -1 if absent
};

}  // namespace whrflab
