// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "whrflab/parallel.hpp"

namespace whrflab {

namespace {

inline cplx i_power(int t) {
  static const cplx units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[t & 3];
}

// Inserts a zero bit at the pivot position, mapping [0, dim/2) onto the
// indices with the pivot bit clear.
inline std::uint64_t expand_index(std::uint64_t k, std::uint64_t below_mask) {
  return ((k & ~below_mask) << 1) | (k & below_mask);
}

}  // namespace

StateVector::StateVector(int n) : n_(n), amp_(std::uint64_t{1} << n, cplx{0.0, 0.0}) {
  if (n < 1 || n > 30) throw std::invalid_argument("StateVector: qubit count out of range");
  amp_[0] = 1.0;
}

StateVector StateVector::basis_state(int n, std::uint64_t bits) {
  StateVector s(n);
  if (bits >= s.dim()) throw std::invalid_argument("basis_state: bits out of range");
  s.amp_[0] = 0.0;
  s.amp_[bits] = 1.0;
  return s;
}

double StateVector::norm() const {
  const double n2 = parallel::sum_indexed(amp_.size(), [&](std::size_t i) {
    return std::norm(amp_[i]);
  });
  return std::sqrt(n2);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm <= 0.0) throw std::runtime_error("StateVector: zero norm");
  const double inv = 1.0 / nrm;
  for (auto& a : amp_) a *= inv;
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.n() != n_) throw std::invalid_argument("apply_pauli: size mismatch");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const cplx ph = i_power(p.phase_exp());
  if (x == 0) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(amp_.size()); ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
      amp_[idx] *= ph * sign;
    }
    return;
  }
  const std::uint64_t pivot = x & (~x + 1);
  const std::uint64_t below = pivot - 1;
  const double pair_sign = std::popcount(z & x) & 1 ? -1.0 : 1.0;
  const std::uint64_t half = amp_.size() >> 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long k = 0; k < static_cast<long long>(half); ++k) {
    const std::uint64_t idx = expand_index(static_cast<std::uint64_t>(k), below);
    const std::uint64_t jdx = idx ^ x;
    const double s0 = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
    const cplx pa = ph * s0;            // phase carrying idx -> jdx
    const cplx pb = pa * pair_sign;     // phase carrying jdx -> idx
    const cplx a = amp_[idx];
    const cplx b = amp_[jdx];
    amp_[jdx] = pa * a;
    amp_[idx] = pb * b;
  }
}

void StateVector::apply_pauli_rotation(const PauliString& p, double angle) {
  if (p.n() != n_) throw std::invalid_argument("apply_pauli_rotation: size mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("apply_pauli_rotation: non-Hermitian generator");
  const double c = std::cos(angle);
  const cplx mis = cplx(0.0, -std::sin(angle));
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const cplx ph = i_power(p.phase_exp());
  if (x == 0) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(amp_.size()); ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
      amp_[idx] *= c + mis * (ph * sign);
    }
    return;
  }
  const std::uint64_t pivot = x & (~x + 1);
  const std::uint64_t below = pivot - 1;
  const double pair_sign = std::popcount(z & x) & 1 ? -1.0 : 1.0;
  const std::uint64_t half = amp_.size() >> 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long k = 0; k < static_cast<long long>(half); ++k) {
    const std::uint64_t idx = expand_index(static_cast<std::uint64_t>(k), below);
    const std::uint64_t jdx = idx ^ x;
    const double s0 = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
    const cplx pa = ph * s0;
    const cplx pb = pa * pair_sign;
    const cplx a = amp_[idx];
    const cplx b = amp_[jdx];
    amp_[idx] = c * a + mis * (pb * b);
    amp_[jdx] = c * b + mis * (pa * a);
  }
}

void StateVector::apply_h(int qubit) {
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::uint64_t idx = 0; idx < dim(); ++idx) {
    if (idx & bit) continue;
    const cplx a = amp_[idx];
    const cplx b = amp_[idx | bit];
    amp_[idx] = (a + b) * inv_sqrt2;
    amp_[idx | bit] = (a - b) * inv_sqrt2;
  }
}

void StateVector::apply_s(int qubit) {
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const cplx i_unit(0.0, 1.0);
  for (std::uint64_t idx = 0; idx < dim(); ++idx) {
    if (idx & bit) amp_[idx] *= i_unit;
  }
}

void StateVector::apply_cx(int control, int target) {
  if (control == target) throw std::invalid_argument("apply_cx: equal qubits");
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t idx = 0; idx < dim(); ++idx) {
    if ((idx & cbit) && !(idx & tbit)) std::swap(amp_[idx], amp_[idx | tbit]);
  }
}

cplx StateVector::inner(const StateVector& other) const {
  if (n_ != other.n_) throw std::invalid_argument("inner: size mismatch");
  const double re = parallel::sum_indexed(amp_.size(), [&](std::size_t i) {
    return std::conj(amp_[i]).real() * other.amp_[i].real() -
           std::conj(amp_[i]).imag() * other.amp_[i].imag();
  });
  const double im = parallel::sum_indexed(amp_.size(), [&](std::size_t i) {
    const cplx v = std::conj(amp_[i]) * other.amp_[i];
    return v.imag();
  });
  return {re, im};
}

void apply_pauli_into(const PauliString& p, const std::vector<cplx>& in,
                      std::vector<cplx>& out) {
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const cplx ph = i_power(p.phase_exp());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(in.size()); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
    out[idx ^ x] = ph * sign * in[idx];
  }
}

void apply_pauli_sum_into(const PauliSum& h, const std::vector<cplx>& in,
                          std::vector<cplx>& out) {
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.op.x_mask();
    const std::uint64_t z = term.op.z_mask();
    const cplx w = term.coefficient * i_power(term.op.phase_exp());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(in.size()); ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
      out[idx ^ x] += w * sign * in[idx];
    }
  }
}

double energy(const StateVector& s, const PauliSum& h) {
  if (h.n() != s.n()) throw std::invalid_argument("energy: size mismatch");
  std::vector<cplx> hs(s.dim());
  apply_pauli_sum_into(h, s.amplitudes(), hs);
  const auto& a = s.amplitudes();
  const double re = parallel::sum_indexed(a.size(), [&](std::size_t i) {
    return (std::conj(a[i]) * hs[i]).real();
  });
  const double im = parallel::sum_indexed(a.size(), [&](std::size_t i) {
    return (std::conj(a[i]) * hs[i]).imag();
  });
  if (std::fabs(im) > 1e-9) throw std::runtime_error("energy: non-real expectation");
  return re;
}

double energy_dense(const StateVector& s, const std::vector<cplx>& h_dense) {
  const std::uint64_t d = s.dim();
  if (h_dense.size() != d * d) throw std::invalid_argument("energy_dense: size mismatch");
  cplx acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < d; ++i) {
    cplx row{0.0, 0.0};
    for (std::uint64_t j = 0; j < d; ++j) row += h_dense[i * d + j] * s[j];
    acc += std::conj(s[i]) * row;
  }
  if (std::fabs(acc.imag()) > 1e-9) throw std::runtime_error("energy_dense: non-real expectation");
  return acc.real();
}

double normalized_energy(double e_raw, double lambda_min, double c_vqa) {
  if (c_vqa <= 0.0) throw std::invalid_argument("normalized_energy: degenerate spectrum");
  return (e_raw - lambda_min) / c_vqa;
}

StateVector random_clifford_state(int n, int depth, rng::Engine& eng) {
  StateVector s(n);
  for (int step = 0; step < depth; ++step) {
    const auto gate = rng::uniform_u64(eng, 0, 2);
    if (gate == 0) {
      s.apply_h(static_cast<int>(rng::uniform_u64(eng, 0, n - 1)));
    } else if (gate == 1) {
      s.apply_s(static_cast<int>(rng::uniform_u64(eng, 0, n - 1)));
    } else {
      const int c = static_cast<int>(rng::uniform_u64(eng, 0, n - 1));
      int t = static_cast<int>(rng::uniform_u64(eng, 0, n - 2));
      if (t >= c) ++t;
      s.apply_cx(c, t);
    }
  }
  return s;
}

namespace serial_ref {

void apply_pauli_rotation(StateVector& s, const PauliString& p, double angle) {
  std::vector<cplx> ps(s.dim());
  // P|s> by direct per-index evaluation, then the cos/sin combination.
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const cplx ph = i_power(p.phase_exp());
  const auto& in = s.amplitudes();
  for (std::uint64_t idx = 0; idx < s.dim(); ++idx) {
    const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
    ps[idx ^ x] = ph * sign * in[idx];
  }
  const double c = std::cos(angle);
  const cplx mis = cplx(0.0, -std::sin(angle));
  for (std::uint64_t idx = 0; idx < s.dim(); ++idx) {
    s.amplitudes()[idx] = c * in[idx] + mis * ps[idx];
  }
}

double energy(const StateVector& s, const PauliSum& h) {
  cplx acc{0.0, 0.0};
  const auto& a = s.amplitudes();
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.op.x_mask();
    const std::uint64_t z = term.op.z_mask();
    const cplx w = term.coefficient * i_power(term.op.phase_exp());
    cplx e{0.0, 0.0};
    for (std::uint64_t idx = 0; idx < a.size(); ++idx) {
      const double sign = std::popcount(z & idx) & 1 ? -1.0 : 1.0;
      e += std::conj(a[idx ^ x]) * (w * sign * a[idx]);
    }
    acc += e;
  }
  return acc.real();
}

}  // namespace serial_ref

}  // namespace whrflab
