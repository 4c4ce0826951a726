// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "whrflab/rng.hpp"

namespace whrflab {

// Mask storage is an array of machine words so the qubit count can grow past
// 64 later; current capacity is one word and n <= 64 is enforced.
inline constexpr int kMaskWords = 1;
using MaskWords = std::array<std::uint64_t, kMaskWords>;

// n-qubit Pauli operator in symplectic form:
//
//   P = i^phase_exp * X^{x_mask} * Z^{z_mask}
//
// with X factors applied after Z factors on each qubit (Y = i*X*Z). The
// exponent of i is tracked mod 4, so the group algebra is exact. The phase
// relative to the canonical Hermitian Pauli word (the per-qubit product of
// I/X/Y/Z) is phase_exp - popcount(x&z) mod 4.
class PauliString {
 public:
  PauliString() = default;
  static PauliString identity(int n);
  // Parses e.g. "XIZY", "+XIZY", "-iYZ". Character j acts on qubit j.
  static PauliString from_string(int n, const std::string& word);
  static PauliString from_masks(int n, std::uint64_t x_mask, std::uint64_t z_mask,
                                int phase_exp = -1);

  // Uniform over all 4^n mask pairs (4^n - 1 when excluding the identity),
  // canonical Hermitian phase.
  static PauliString sample_uniform(int n, bool exclude_identity, rng::Engine& eng);

  int n() const { return n_; }
  std::uint64_t x_mask() const { return x_[0]; }
  std::uint64_t z_mask() const { return z_[0]; }
  int phase_exp() const { return phase_exp_; }

  bool is_identity() const;
  bool is_hermitian() const;
  // Phase relative to the canonical Hermitian word, as one of {1, i, -1, -i}.
  std::complex<double> phase() const;

  PauliString multiplied_by(const PauliString& rhs) const;  // this * rhs
  bool commutes_with(const PauliString& rhs) const;

  bool same_masks(const PauliString& rhs) const;
  bool operator==(const PauliString& rhs) const;

  // Renders e.g. "+XIZY"; the sign prefix is one of +, -, +i, -i.
  std::string str() const;

  // Mask-sortable key ignoring phase, for term de-duplication.
  std::pair<std::uint64_t, std::uint64_t> mask_key() const { return {x_[0], z_[0]}; }

 private:
  int n_ = 0;
  MaskWords x_{};
  MaskWords z_{};
  int phase_exp_ = 0;  // exponent of i, mod 4
};

// Weighted sum of Hermitian Pauli words with real coefficients. Duplicate
// operators are merged on insertion.
class PauliSum {
 public:
  struct Term {
    double coefficient = 0.0;
    PauliString op;
  };

  explicit PauliSum(int n) : n_(n) {}

  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Adds coefficient * op, merging into an existing term with equal masks.
  // op must be Hermitian with canonical (+1) phase after folding the sign of
  // any -1 phase into the coefficient.
  void add(double coefficient, const PauliString& op);

  double identity_coefficient() const;
  // Number of non-identity terms.
  std::size_t term_count_nonidentity() const;
  // Drops terms with |coefficient| below eps.
  void prune(double eps = 1e-14);

  std::string str() const;

 private:
  int n_;
  std::vector<Term> terms_;
};

}  // namespace whrflab
