// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0
//
// OpenMP kernel helpers. Every parallel loop here has a serial twin with the
// same summation order, so results are bit-identical for any thread count.

#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace whrflab::parallel {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Independent tasks indexed 0..count-1. Results are written by index, so the
// outcome does not depend on scheduling.
template <typename Fn>
void for_each_index(std::size_t count, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    fn(static_cast<std::size_t>(i));
  }
}

template <typename Fn>
void for_each_index_serial(std::size_t count, Fn&& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

// Deterministic sum reduction: accumulate fixed-size blocks, then add the
// block partials in block order. The block layout depends only on `count`,
// never on the thread count, so parallel and serial runs agree bitwise.
inline constexpr std::size_t kReduceBlock = 1024;

template <typename Fn>
double sum_indexed(std::size_t count, Fn&& term) {
  const std::size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = lo + kReduceBlock < count ? lo + kReduceBlock : count;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

template <typename Fn>
double sum_indexed_serial(std::size_t count, Fn&& term) {
  const std::size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
  double total = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * kReduceBlock;
    const std::size_t hi = lo + kReduceBlock < count ? lo + kReduceBlock : count;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    total += acc;
  }
  return total;
}

}  // namespace whrflab::parallel
