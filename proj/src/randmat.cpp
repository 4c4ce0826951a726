// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/randmat.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace whrflab {

long EnsembleParams::wishart_dof() const {
  const long dof = std::lround(2.0 * m);
  return dof < 1 ? 1 : dof;
}

void EnsembleParams::validate() const {
  if (p < 1 || m < 1.0 || r < 1 || x < 0.0) {
    throw std::invalid_argument("EnsembleParams: out of range");
  }
}

Eigen::MatrixXd sample_goe(int p, rng::Engine& eng) {
  if (p < 1) throw std::invalid_argument("sample_goe: p < 1");
  Eigen::MatrixXd n(p, p);
  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double v = rng::normal(eng, 0.0, i == j ? sqrt2 : 1.0);
      n(i, j) = v;
      n(j, i) = v;
    }
  }
  return n;
}

Eigen::MatrixXd sample_wishart_real(int p, long dof, rng::Engine& eng) {
  if (p < 1 || dof < 1) throw std::invalid_argument("sample_wishart_real: bad arguments");
  Eigen::MatrixXd g(p, dof);
  for (int i = 0; i < p; ++i) {
    for (long j = 0; j < dof; ++j) g(i, j) = rng::normal(eng);
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  w.selfadjointView<Eigen::Lower>().rankUpdate(g);
  w = w.selfadjointView<Eigen::Lower>();
  return w;
}

CParts sample_c_parts(const EnsembleParams& params, rng::Engine& eng) {
  params.validate();
  CParts parts;
  parts.wishart = sample_wishart_real(params.p, params.wishart_dof(), eng);
  parts.goe = sample_goe(params.p, eng);
  return parts;
}

Eigen::MatrixXd assemble_c(const CParts& parts, const EnsembleParams& params, double x) {
  if (x < 0.0) throw std::invalid_argument("assemble_c: negative energy");
  const double scale = static_cast<double>(params.r) / params.m;
  return scale * (parts.wishart + std::sqrt(2.0 * params.m * x) * parts.goe);
}

Eigen::MatrixXd sample_c(const EnsembleParams& params, rng::Engine& eng) {
  const CParts parts = sample_c_parts(params, eng);
  return assemble_c(parts, params, params.x);
}

std::vector<double> eigenvalues_sym(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_sym: solver failed");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

namespace {

inline std::complex<double> draw_standard_complex(rng::Engine& eng) {
  const double s = std::sqrt(0.5);
  const double re = rng::normal(eng, 0.0, s);
  const double im = rng::normal(eng, 0.0, s);
  return {re, im};
}

}  // namespace

double whrf_loss_draw(long m, rng::Engine& eng) {
  if (m < 1) throw std::invalid_argument("whrf_loss_draw: m < 1");
  double acc = 0.0;
  for (long k = 0; k < m; ++k) acc += std::norm(draw_standard_complex(eng));
  return acc / static_cast<double>(m);
}

WhrfField::WhrfField(int p, int r, long m, rng::Engine& eng, bool full_rows)
    : p_(p), r_(r), m_(m), full_(full_rows) {
  if (p < 1 || r < 1 || m < 1) throw std::invalid_argument("WhrfField: bad parameters");
  const int q = p_ * r_;
  if (full_ && q > 20) throw std::invalid_argument("WhrfField: q too large for full rows");
  if (q > 26) throw std::invalid_argument("WhrfField: q too large");

  if (full_) {
    const std::uint32_t dim = 1u << q;
    patterns_.resize(dim);
    for (std::uint32_t v = 0; v < dim; ++v) patterns_[v] = v;
  } else {
    patterns_.push_back(0);
    for (int s = 0; s < q; ++s) patterns_.push_back(1u << s);
    for (int s2 = 1; s2 < q; ++s2) {
      for (int s1 = 0; s1 < s2; ++s1) patterns_.push_back((1u << s1) | (1u << s2));
    }
    pattern_index_.assign(std::size_t{1} << q, -1);
    for (std::size_t i = 0; i < patterns_.size(); ++i) pattern_index_[patterns_[i]] = static_cast<int>(i);
  }

  rows_.resize(static_cast<long>(patterns_.size()), m_);
  for (long i = 0; i < rows_.rows(); ++i) {
    for (long j = 0; j < m_; ++j) rows_(i, j) = draw_standard_complex(eng);
  }
}

std::complex<double> WhrfField::j_entry(std::uint32_t pat_a, std::uint32_t pat_b) const {
  const int ia = full_ ? static_cast<int>(pat_a) : pattern_index_[pat_a];
  const int ib = full_ ? static_cast<int>(pat_b) : pattern_index_[pat_b];
  if (ia < 0 || ib < 0) throw std::logic_error("WhrfField: pattern not materialised");
  // J_{ab} = sum_mu X_{a mu} conj(X_{b mu})
  return rows_.row(ib).dot(rows_.row(ia));
}

double WhrfField::loss_at_origin() const {
  return j_entry(0, 0).real() / static_cast<double>(m_);
}

Eigen::VectorXd WhrfField::gradient_at_origin() const {
  Eigen::VectorXd g(p_);
  for (int i = 0; i < p_; ++i) {
    double acc = 0.0;
    for (int k = 0; k < r_; ++k) {
      acc += 2.0 * j_entry(1u << slot(i, k), 0).real();
    }
    g(i) = acc / static_cast<double>(m_);
  }
  return g;
}

Eigen::MatrixXd WhrfField::hessian_from_rows(const std::vector<Eigen::VectorXcd>& singles) const {
  const double j_bb = j_entry(0, 0).real();
  auto single = [&](int i, int k) -> const Eigen::VectorXcd& {
    return singles[static_cast<std::size_t>(k * p_ + i)];
  };
  Eigen::MatrixXd h(p_, p_);
  for (int i = 0; i < p_; ++i) {
    for (int j = i; j < p_; ++j) {
      double acc = 0.0;
      if (i == j) acc -= 2.0 * r_ * j_bb;
      // Double-flip entries against the value-bearing row.
      for (int k = 0; k < r_; ++k) {
        for (int l = 0; l < r_; ++l) {
          const int sa = slot(i, k), sb = slot(j, l);
          if (sa == sb) continue;  // i == j, same copy: folded into the -2r term
          acc += 2.0 * j_entry((1u << sa) | (1u << sb), 0).real();
        }
      }
      // Cross terms between single-flip rows (these see the conditioning).
      for (int k = 0; k < r_; ++k) {
        for (int l = 0; l < r_; ++l) {
          acc += 2.0 * single(j, l).dot(single(i, k)).real();
        }
      }
      h(i, j) = acc / static_cast<double>(m_);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

Eigen::MatrixXd WhrfField::hessian_at_origin(bool condition_on_critical) const {
  std::vector<Eigen::VectorXcd> singles;
  singles.reserve(static_cast<std::size_t>(p_) * r_);
  for (int k = 0; k < r_; ++k) {
    for (int i = 0; i < p_; ++i) {
      const int idx = full_ ? (1 << slot(i, k)) : pattern_index_[1u << slot(i, k)];
      singles.emplace_back(rows_.row(idx));
    }
  }
  if (condition_on_critical) {
    const int idx0 = full_ ? 0 : pattern_index_[0];
    Eigen::VectorXcd u = rows_.row(idx0);
    u.normalize();
    // Zeroing the gradient constrains, per parameter, the mean over copies of
    // the real projection onto u. Gaussian conditioning = subtract the mean.
    for (int i = 0; i < p_; ++i) {
      double mean_re = 0.0;
      for (int k = 0; k < r_; ++k) {
        mean_re += u.dot(singles[static_cast<std::size_t>(k * p_ + i)]).real();
      }
      mean_re /= static_cast<double>(r_);
      for (int k = 0; k < r_; ++k) {
        singles[static_cast<std::size_t>(k * p_ + i)] -= mean_re * u;
      }
    }
  }
  return hessian_from_rows(singles);
}

double WhrfField::value(const Eigen::VectorXd& theta) const {
  if (!full_) throw std::logic_error("WhrfField::value needs full rows");
  if (theta.size() != p_) throw std::invalid_argument("WhrfField::value: bad parameter count");
  const int q = p_ * r_;
  const std::uint32_t dim = 1u << q;
  std::vector<double> cos_s(static_cast<std::size_t>(q)), sin_s(static_cast<std::size_t>(q));
  for (int s = 0; s < q; ++s) {
    cos_s[static_cast<std::size_t>(s)] = std::cos(theta(s % p_));
    sin_s[static_cast<std::size_t>(s)] = std::sin(theta(s % p_));
  }
  Eigen::VectorXd v(dim);
  for (std::uint32_t idx = 0; idx < dim; ++idx) {
    double prod = 1.0;
    for (int s = 0; s < q; ++s) {
      prod *= (idx >> s) & 1 ? sin_s[static_cast<std::size_t>(s)]
                             : cos_s[static_cast<std::size_t>(s)];
    }
    v(idx) = prod;
  }
  const Eigen::VectorXcd u = rows_.adjoint() * v;
  return u.squaredNorm() / static_cast<double>(m_);
}

}  // namespace whrflab
