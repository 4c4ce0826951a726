// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "whrflab/pauli.hpp"
#include "whrflab/rng.hpp"

namespace whrflab {

using cplx = std::complex<double>;

// Dense n-qubit state. Basis index bit j is qubit j.
class StateVector {
 public:
  explicit StateVector(int n);
  static StateVector basis_state(int n, std::uint64_t bits);

  int n() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }
  cplx operator[](std::uint64_t i) const { return amp_[i]; }

  double norm() const;
  void normalize();

  // In-place |s> <- P|s| for a Pauli operator (index permutation + phase).
  void apply_pauli(const PauliString& p);
  // In-place |s> <- exp(-i angle P)|s> = cos(angle)|s> - i sin(angle) P|s>.
  // P must be Hermitian.
  void apply_pauli_rotation(const PauliString& p, double angle);

  // Clifford gates, used for random stabilizer-state preparation.
  void apply_h(int qubit);
  void apply_s(int qubit);
  void apply_cx(int control, int target);

  cplx inner(const StateVector& other) const;  // <this|other>

 private:
  int n_;
  std::vector<cplx> amp_;
};

// |out> = P|in> into a caller-provided buffer (no aliasing with in).
void apply_pauli_into(const PauliString& p, const std::vector<cplx>& in,
                      std::vector<cplx>& out);

// Accumulates H|s> term by term. `scratch` must have the state dimension.
void apply_pauli_sum_into(const PauliSum& h, const std::vector<cplx>& in,
                          std::vector<cplx>& out);

// Real part of <s|H|s>; throws if the imaginary part exceeds 1e-9.
double energy(const StateVector& s, const PauliSum& h);

// <s|H|s> for a dense matrix in row-major order (test oracle path).
double energy_dense(const StateVector& s, const std::vector<cplx>& h_dense);

// (e_raw - lambda_min) / c_vqa; see SpectralStats.
double normalized_energy(double e_raw, double lambda_min, double c_vqa);

// Random H/S/CX circuit of the given depth applied to |0...0>; a cheap stand-in
// for uniform Clifford sampling, adequate for low-moment statistics.
StateVector random_clifford_state(int n, int depth, rng::Engine& eng);

namespace serial_ref {
// Plain-loop references for the OpenMP kernels above.
void apply_pauli_rotation(StateVector& s, const PauliString& p, double angle);
double energy(const StateVector& s, const PauliSum& h);
}  // namespace serial_ref

}  // namespace whrflab
