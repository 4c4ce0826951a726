// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace whrflab::rng {

// SplitMix64 finalizer. Used to decorrelate seeds derived from (master, index)
// pairs so that parallel workers get independent-looking streams.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
  return splitmix64(seed ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// Per-task substream: deterministic regardless of scheduling order.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  return Engine(mix(seed, stream_id));
}

inline double normal(Engine& eng, double mean = 0.0, double stddev = 1.0) {
  std::normal_distribution<double> d(mean, stddev);
  return d(eng);
}

inline double uniform(Engine& eng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(eng);
}

inline std::uint64_t uniform_u64(Engine& eng, std::uint64_t lo, std::uint64_t hi) {
  std::uniform_int_distribution<std::uint64_t> d(lo, hi);
  return d(eng);
}

}  // namespace whrflab::rng
