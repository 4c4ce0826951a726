// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "whrflab/pauli.hpp"
#include "whrflab/statevector.hpp"

namespace whrflab {

// How the trial-state preparation starts.
struct InitialState {
  enum class Kind { BasisState, RandomClifford };
  Kind kind = Kind::BasisState;
  std::uint64_t basis_bits = 0;
  std::uint64_t clifford_seed = 0;

  static InitialState basis(std::uint64_t bits) {
    return {Kind::BasisState, bits, 0};
  }
  static InitialState random_clifford(std::uint64_t seed) {
    return {Kind::RandomClifford, 0, seed};
  }
};

// Ordered product of Pauli rotations exp(-i * coefficient * theta[param] * G),
// applied in list order to the initial state. Several rotations may share one
// parameter.
struct AnsatzProgram {
  int n = 0;
  int num_params = 0;
  struct Rotation {
    PauliString generator;
    int param_index = 0;
    double coefficient = 1.0;
  };
  std::vector<Rotation> rotations;
  InitialState initial;

  std::size_t depth() const { return rotations.size(); }
  // Multiplicity r = q/p; throws unless every parameter occurs equally often.
  int rotations_per_parameter() const;
  void validate() const;
};

StateVector make_initial_state(const AnsatzProgram& a);
StateVector prepare(const AnsatzProgram& a, std::span<const double> params);

double ansatz_energy(const AnsatzProgram& a, std::span<const double> params,
                     const PauliSum& h);

enum class GradientMode { ParameterShift, FiniteDifference };

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
};

// ParameterShift evaluates the exact analytic derivative (equal to the sum of
// +-pi/4 shift differences over the rotations sharing each parameter) with a
// single reverse sweep. FiniteDifference uses central differences of width
// fd_step on each parameter.
EnergyGradient energy_gradient(const AnsatzProgram& a, std::span<const double> params,
                               const PauliSum& h, GradientMode mode,
                               double fd_step = 1e-4);

// Wraps angles to [-pi, pi).
double wrap_angle(double theta);
void wrap_angles(std::vector<double>& thetas);

}  // namespace whrflab
