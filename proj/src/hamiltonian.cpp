// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "whrflab/rng.hpp"

namespace whrflab {

void FermiHubbardSpec::validate() const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("FermiHubbardSpec: n must be even and >= 2");
  if (disorder_variance < 0.0) throw std::invalid_argument("FermiHubbardSpec: negative variance");
}

LinkCouplings draw_link_couplings(const FermiHubbardSpec& spec) {
  spec.validate();
  auto eng = rng::make_engine(spec.seed);
  const double sigma = std::sqrt(spec.disorder_variance);
  LinkCouplings lc;
  lc.t.resize(spec.n - 1);
  lc.u.resize(spec.n - 1);
  for (int i = 0; i < spec.n - 1; ++i) {
    lc.t[i] = sigma > 0.0 ? rng::normal(eng, spec.t_mean, sigma) : spec.t_mean;
    lc.u[i] = sigma > 0.0 ? rng::normal(eng, spec.u_mean, sigma) : spec.u_mean;
  }
  return lc;
}

PauliSum build_fermi_hubbard(const FermiHubbardSpec& spec) {
  spec.validate();
  const auto lc = draw_link_couplings(spec);
  const int n = spec.n;
  PauliSum h(n);
  for (int i = 0; i < n - 1; ++i) {
    const std::uint64_t bi = 1ULL << i;
    const std::uint64_t bj = 1ULL << (i + 1);
    // Hopping on the link (JW strings cancel for nearest neighbours).
    h.add(-0.5 * lc.t[i], PauliString::from_masks(n, bi | bj, 0));        // XX
    h.add(-0.5 * lc.t[i], PauliString::from_masks(n, bi | bj, bi | bj));  // YY
    // Density-density: (U/4)(I - Z_i)(I - Z_j).
    h.add(0.25 * lc.u[i], PauliString::identity(n));
    h.add(-0.25 * lc.u[i], PauliString::from_masks(n, 0, bi));
    h.add(-0.25 * lc.u[i], PauliString::from_masks(n, 0, bj));
    h.add(0.25 * lc.u[i], PauliString::from_masks(n, 0, bi | bj));
  }
  h.prune();
  return h;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const std::uint64_t d = std::uint64_t{1} << h.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(d), static_cast<long>(d));
  static const std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.op.x_mask();
    const std::uint64_t z = term.op.z_mask();
    const std::complex<double> w = term.coefficient * units[term.op.phase_exp() & 3];
    for (std::uint64_t col = 0; col < d; ++col) {
      const double sign = std::popcount(z & col) & 1 ? -1.0 : 1.0;
      m(static_cast<long>(col ^ x), static_cast<long>(col)) += w * sign;
    }
  }
  return m;
}

namespace {

void check_dense_dimension(int n) {
  if (n > 12) throw std::invalid_argument("diagonalize: dense path capped at n = 12");
}

}  // namespace

std::vector<double> diagonalize(const PauliSum& h) {
  check_dense_dimension(h.n());
  const Eigen::MatrixXcd m = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalize: solver failed");
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  return eigs;
}

Eigensystem diagonalize_full(const PauliSum& h) {
  check_dense_dimension(h.n());
  const Eigen::MatrixXcd m = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalize: solver failed");
  Eigensystem out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  out.eigenvectors = solver.eigenvectors();
  return out;
}

SpectralStats spectral_stats(const std::vector<double>& eigs) {
  if (eigs.empty()) throw std::invalid_argument("spectral_stats: empty spectrum");
  SpectralStats s;
  s.dim = eigs.size();
  s.lambda_min = eigs.front();
  double sum = 0.0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (i > 0 && eigs[i] < eigs[i - 1] - 1e-12) {
      throw std::invalid_argument("spectral_stats: spectrum not sorted");
    }
    sum += eigs[i];
  }
  s.lambda_mean = sum / static_cast<double>(eigs.size());
  for (double e : eigs) {
    s.nuclear_norm += e - s.lambda_min;
    s.frobenius_sq += (e - s.lambda_mean) * (e - s.lambda_mean);
  }
  s.c_vqa = s.lambda_mean - s.lambda_min;
  if (s.frobenius_sq <= 1e-12 * std::max(1.0, s.nuclear_norm * s.nuclear_norm)) {
    throw std::domain_error("spectral_stats: degenerate (constant) spectrum, m undefined");
  }
  s.m = s.nuclear_norm * s.nuclear_norm / s.frobenius_sq;
  s.m_rounded = std::lround(s.m);
  if (s.m_rounded < 1) s.m_rounded = 1;
  return s;
}

SectorRestriction restrict_to_sector(const PauliSum& h, int fermion_count) {
  const int n = h.n();
  check_dense_dimension(n);
  if (fermion_count < 0 || fermion_count > n) {
    throw std::invalid_argument("restrict_to_sector: bad fermion count");
  }
  const Eigen::MatrixXcd full = dense_matrix(h);
  const std::uint64_t d = std::uint64_t{1} << n;

  // Number conservation: no matrix elements between different Hamming weights.
  double off = 0.0;
  for (std::uint64_t a = 0; a < d; ++a) {
    for (std::uint64_t b = 0; b < d; ++b) {
      if (std::popcount(a) != std::popcount(b)) {
        off = std::max(off, std::abs(full(static_cast<long>(a), static_cast<long>(b))));
      }
    }
  }
  if (off > 1e-9) throw std::domain_error("restrict_to_sector: H does not conserve fermion number");

  SectorRestriction out;
  for (std::uint64_t b = 0; b < d; ++b) {
    if (std::popcount(b) == fermion_count) out.basis.push_back(b);
  }
  const long sd = static_cast<long>(out.basis.size());
  out.matrix.resize(sd, sd);
  for (long i = 0; i < sd; ++i) {
    for (long j = 0; j < sd; ++j) {
      out.matrix(i, j) = full(static_cast<long>(out.basis[static_cast<std::size_t>(i)]),
                              static_cast<long>(out.basis[static_cast<std::size_t>(j)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("restrict_to_sector: solver failed");
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  out.stats = spectral_stats(out.eigenvalues);
  return out;
}

}  // namespace whrflab
