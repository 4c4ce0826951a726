// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whrflab {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 64 * kMaskWords) {
    throw std::invalid_argument("PauliString: qubit count out of range");
  }
}

int popcount_masked(std::uint64_t m) { return std::popcount(m); }

}  // namespace

PauliString PauliString::identity(int n) {
  check_qubit_count(n);
  PauliString p;
  p.n_ = n;
  return p;
}

PauliString PauliString::from_masks(int n, std::uint64_t x_mask, std::uint64_t z_mask,
                                    int phase_exp) {
  check_qubit_count(n);
  const std::uint64_t valid = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
    throw std::invalid_argument("PauliString: mask bit set beyond qubit count");
  }
  PauliString p;
  p.n_ = n;
  p.x_[0] = x_mask;
  p.z_[0] = z_mask;
  // Default to the canonical Hermitian word i^{|x&z|} X^x Z^z.
  p.phase_exp_ = phase_exp < 0 ? popcount_masked(x_mask & z_mask) & 3 : phase_exp & 3;
  return p;
}

PauliString PauliString::from_string(int n, const std::string& word) {
  std::size_t pos = 0;
  int extra_phase = 0;
  if (pos < word.size() && (word[pos] == '+' || word[pos] == '-')) {
    if (word[pos] == '-') extra_phase += 2;
    ++pos;
  }
  if (pos < word.size() && word[pos] == 'i') {
    extra_phase += 1;
    ++pos;
  }
  const std::string body = word.substr(pos);
  if (static_cast<int>(body.size()) != n) {
    throw std::invalid_argument("PauliString: word length does not match qubit count");
  }
  std::uint64_t x = 0, z = 0;
  for (int j = 0; j < n; ++j) {
    switch (body[static_cast<std::size_t>(j)]) {
      case 'I': case '_': break;
      case 'X': x |= 1ULL << j; break;
      case 'Y': x |= 1ULL << j; z |= 1ULL << j; break;
      case 'Z': z |= 1ULL << j; break;
      default: throw std::invalid_argument("PauliString: bad character in word");
    }
  }
  auto p = from_masks(n, x, z);
  p.phase_exp_ = (p.phase_exp_ + extra_phase) & 3;
  return p;
}

PauliString PauliString::sample_uniform(int n, bool exclude_identity, rng::Engine& eng) {
  check_qubit_count(n);
  if (n > 31) throw std::invalid_argument("sample_uniform: n too large for index draw");
  const std::uint64_t lo = exclude_identity ? 1 : 0;
  const std::uint64_t hi = (1ULL << (2 * n)) - 1;
  const std::uint64_t idx = rng::uniform_u64(eng, lo, hi);
  const std::uint64_t x = idx & ((1ULL << n) - 1);
  const std::uint64_t z = idx >> n;
  return from_masks(n, x, z);
}

bool PauliString::is_identity() const {
  return x_[0] == 0 && z_[0] == 0 && phase_exp_ == 0;
}

bool PauliString::is_hermitian() const {
  return ((phase_exp_ - popcount_masked(x_[0] & z_[0])) & 1) == 0;
}

std::complex<double> PauliString::phase() const {
  static const std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int rel = (phase_exp_ - popcount_masked(x_[0] & z_[0])) & 3;
  return units[rel];
}

PauliString PauliString::multiplied_by(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString multiply: size mismatch");
  PauliString out;
  out.n_ = n_;
  out.x_[0] = x_[0] ^ rhs.x_[0];
  out.z_[0] = z_[0] ^ rhs.z_[0];
  // Z^{z_a} X^{x_b} = (-1)^{|z_a & x_b|} X^{x_b} Z^{z_a}.
  const int swaps = popcount_masked(z_[0] & rhs.x_[0]);
  out.phase_exp_ = (phase_exp_ + rhs.phase_exp_ + 2 * swaps) & 3;
  return out;
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString commutes: size mismatch");
  const int sym = popcount_masked(x_[0] & rhs.z_[0]) + popcount_masked(z_[0] & rhs.x_[0]);
  return (sym & 1) == 0;
}

bool PauliString::same_masks(const PauliString& rhs) const {
  return n_ == rhs.n_ && x_[0] == rhs.x_[0] && z_[0] == rhs.z_[0];
}

bool PauliString::operator==(const PauliString& rhs) const {
  return same_masks(rhs) && phase_exp_ == rhs.phase_exp_;
}

std::string PauliString::str() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  const int rel = (phase_exp_ - popcount_masked(x_[0] & z_[0])) & 3;
  std::string s = prefix[rel];
  for (int j = 0; j < n_; ++j) {
    const bool x = (x_[0] >> j) & 1;
    const bool z = (z_[0] >> j) & 1;
    s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

void PauliSum::add(double coefficient, const PauliString& op) {
  if (op.n() != n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  if (!op.is_hermitian()) throw std::invalid_argument("PauliSum: non-Hermitian term");
  double coeff = coefficient;
  const std::complex<double> ph = op.phase();
  if (std::abs(ph.imag()) > 0) throw std::invalid_argument("PauliSum: imaginary phase");
  if (ph.real() < 0) coeff = -coeff;
  for (auto& t : terms_) {
    if (t.op.same_masks(op)) {
      t.coefficient += coeff;
      return;
    }
  }
  Term t;
  t.coefficient = coeff;
  t.op = PauliString::from_masks(n_, op.x_mask(), op.z_mask());
  terms_.push_back(t);
}

double PauliSum::identity_coefficient() const {
  for (const auto& t : terms_) {
    if (t.op.is_identity()) return t.coefficient;
  }
  return 0.0;
}

std::size_t PauliSum::term_count_nonidentity() const {
  std::size_t c = 0;
  for (const auto& t : terms_) {
    if (!t.op.is_identity()) ++c;
  }
  return c;
}

void PauliSum::prune(double eps) {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [eps](const Term& t) { return std::fabs(t.coefficient) < eps; }),
               terms_.end());
}

std::string PauliSum::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << "  ";
    os << terms_[i].coefficient << "*" << terms_[i].op.str();
  }
  return os.str();
}

}  // namespace whrflab
