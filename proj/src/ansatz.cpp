// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "whrflab/parallel.hpp"

namespace whrflab {

int AnsatzProgram::rotations_per_parameter() const {
  std::vector<int> counts(num_params, 0);
  for (const auto& rot : rotations) counts[rot.param_index]++;
  for (int c : counts) {
    if (c != counts[0]) throw std::logic_error("ansatz: unequal parameter multiplicity");
  }
  if (counts.empty() || counts[0] == 0) throw std::logic_error("ansatz: unused parameter");
  return counts[0];
}

void AnsatzProgram::validate() const {
  if (n < 1) throw std::invalid_argument("ansatz: bad qubit count");
  if (num_params < 1) throw std::invalid_argument("ansatz: no parameters");
  std::vector<bool> seen(num_params, false);
  for (const auto& rot : rotations) {
    if (rot.generator.n() != n) throw std::invalid_argument("ansatz: generator size mismatch");
    if (rot.param_index < 0 || rot.param_index >= num_params) {
      throw std::invalid_argument("ansatz: parameter index out of range");
    }
    seen[rot.param_index] = true;
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("ansatz: parameter never used");
  }
}

StateVector make_initial_state(const AnsatzProgram& a) {
  if (a.initial.kind == InitialState::Kind::BasisState) {
    return StateVector::basis_state(a.n, a.initial.basis_bits);
  }
  auto eng = rng::make_engine(a.initial.clifford_seed);
  return random_clifford_state(a.n, 2 * a.n * a.n, eng);
}

StateVector prepare(const AnsatzProgram& a, std::span<const double> params) {
  if (static_cast<int>(params.size()) != a.num_params) {
    throw std::invalid_argument("prepare: wrong parameter count");
  }
  StateVector s = make_initial_state(a);
  for (const auto& rot : a.rotations) {
    s.apply_pauli_rotation(rot.generator, rot.coefficient * params[rot.param_index]);
  }
  return s;
}

double ansatz_energy(const AnsatzProgram& a, std::span<const double> params,
                     const PauliSum& h) {
  const StateVector s = prepare(a, params);
  return energy(s, h);
}

namespace {

// Reverse sweep: after the forward pass, peel gates off both the state and the
// H-image; each step exposes d<H>/d(occurrence angle) = 2 Im <L|G|B>.
EnergyGradient adjoint_gradient(const AnsatzProgram& a, std::span<const double> params,
                                const PauliSum& h) {
  EnergyGradient out;
  out.gradient.assign(a.num_params, 0.0);

  StateVector b = prepare(a, params);
  StateVector l(a.n);
  apply_pauli_sum_into(h, b.amplitudes(), l.amplitudes());

  {
    const cplx e = b.inner(l);
    if (std::fabs(e.imag()) > 1e-9) throw std::runtime_error("gradient: non-real energy");
    out.energy = e.real();
  }

  std::vector<cplx> scratch(b.dim());
  for (std::size_t kk = a.rotations.size(); kk-- > 0;) {
    const auto& rot = a.rotations[kk];
    apply_pauli_into(rot.generator, b.amplitudes(), scratch);
    const double im = parallel::sum_indexed(scratch.size(), [&](std::size_t i) {
      return (std::conj(l.amplitudes()[i]) * scratch[i]).imag();
    });
    out.gradient[rot.param_index] += 2.0 * rot.coefficient * im;
    const double angle = rot.coefficient * params[rot.param_index];
    b.apply_pauli_rotation(rot.generator, -angle);
    l.apply_pauli_rotation(rot.generator, -angle);
  }
  return out;
}

EnergyGradient finite_difference_gradient(const AnsatzProgram& a,
                                          std::span<const double> params,
                                          const PauliSum& h, double step) {
  EnergyGradient out;
  out.energy = ansatz_energy(a, params, h);
  out.gradient.assign(a.num_params, 0.0);
  std::vector<double> shifted(params.begin(), params.end());
  for (int i = 0; i < a.num_params; ++i) {
    const double orig = shifted[i];
    shifted[i] = orig + step;
    const double plus = ansatz_energy(a, shifted, h);
    shifted[i] = orig - step;
    const double minus = ansatz_energy(a, shifted, h);
    shifted[i] = orig;
    out.gradient[i] = (plus - minus) / (2.0 * step);
  }
  return out;
}

}  // namespace

EnergyGradient energy_gradient(const AnsatzProgram& a, std::span<const double> params,
                               const PauliSum& h, GradientMode mode, double fd_step) {
  if (static_cast<int>(params.size()) != a.num_params) {
    throw std::invalid_argument("energy_gradient: wrong parameter count");
  }
  if (h.n() != a.n) throw std::invalid_argument("energy_gradient: size mismatch");
  if (mode == GradientMode::ParameterShift) return adjoint_gradient(a, params, h);
  return finite_difference_gradient(a, params, h, fd_step);
}

double wrap_angle(double theta) {
  constexpr double pi = std::numbers::pi;
  double t = std::fmod(theta + pi, 2.0 * pi);
  if (t < 0) t += 2.0 * pi;
  return t - pi;
}

void wrap_angles(std::vector<double>& thetas) {
  for (double& t : thetas) t = wrap_angle(t);
}

}  // namespace whrflab
