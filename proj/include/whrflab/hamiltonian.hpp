// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "whrflab/pauli.hpp"

namespace whrflab {

// Disordered spinless Fermi-Hubbard chain with open boundaries:
//
//   H = -sum_i T_i (c_i^dag c_{i+1} + h.c.) + sum_i U_i n_i n_{i+1}
//
// with per-link couplings T_i ~ N(t_mean, disorder_variance) and
// U_i ~ N(u_mean, disorder_variance), drawn once from `seed`.
struct FermiHubbardSpec {
  int n = 6;  // sites / qubits, even, >= 2
  double t_mean = 1.0;
  double u_mean = 2.0;
  double disorder_variance = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LinkCouplings {
  std::vector<double> t;  // n-1 hopping amplitudes
  std::vector<double> u;  // n-1 interaction strengths
};

// Deterministic given the spec seed; (T_i, U_i) drawn per link in link order.
LinkCouplings draw_link_couplings(const FermiHubbardSpec& spec);

// Jordan-Wigner image. Hopping -> -(T_i/2)(X_i X_{i+1} + Y_i Y_{i+1});
// interaction -> (U_i/4)(I - Z_i)(I - Z_{i+1}) expanded into Pauli words.
PauliSum build_fermi_hubbard(const FermiHubbardSpec& spec);

Eigen::MatrixXcd dense_matrix(const PauliSum& h);

// Ascending eigenvalues of the dense 2^n x 2^n Hermitian matrix. n <= 12.
std::vector<double> diagonalize(const PauliSum& h);

struct Eigensystem {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXcd eigenvectors;    // columns
};
Eigensystem diagonalize_full(const PauliSum& h);

// Spectrum summary feeding the loss normalization and the field model:
//   nuclear_norm  = sum_i (lambda_i - lambda_min)        (trace norm of H - lambda_min)
//   frobenius_sq  = sum_i (lambda_i - lambda_mean)^2
//   m             = nuclear_norm^2 / frobenius_sq
//   c_vqa         = lambda_mean - lambda_min
struct SpectralStats {
  double lambda_min = 0.0;
  double lambda_mean = 0.0;
  double nuclear_norm = 0.0;
  double frobenius_sq = 0.0;
  double m = 0.0;
  long m_rounded = 0;
  double c_vqa = 0.0;
  std::size_t dim = 0;
};

// Throws on a constant spectrum (m undefined).
SpectralStats spectral_stats(const std::vector<double>& ascending_eigs);

inline double gamma_factor(int p, double m) { return static_cast<double>(p) / (2.0 * m); }

// Projection onto computational-basis states of Hamming weight
// `fermion_count`. Throws if h does not commute with the total number
// operator (checked to 1e-9 on matrix elements).
struct SectorRestriction {
  std::vector<std::uint64_t> basis;  // ascending basis indices of the sector
  Eigen::MatrixXcd matrix;
  std::vector<double> eigenvalues;
  SpectralStats stats;
};
SectorRestriction restrict_to_sector(const PauliSum& h, int fermion_count);

}  // namespace whrflab
