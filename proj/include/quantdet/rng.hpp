// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams. A Stream is a pure function of (seed, path):
// the same derivation path always yields the same draws, independent of which
// thread consumes it or in what order streams are created. The Monte Carlo
// harness derives one stream per (sweep point, hypothesis, trial, sensor) so
// that results are bit-stable under any parallel schedule.
#pragma once

#include <cstdint>
#include <initializer_list>

namespace quantdet {

// SplitMix64 finalizer: the standard 64-bit avalanche mix.
std::uint64_t mix64(std::uint64_t z);

class Stream {
 public:
  // Derives a stream key by folding each path element into the seed.
  Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  // Child stream: same derivation rule applied to this stream's key.
  Stream child(std::initializer_list<std::uint64_t> path) const;

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double next_unit();

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double next_normal();

  // True with probability p.
  bool next_bernoulli(double p);

 private:
  Stream(std::uint64_t key) : key_(key) {}
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace quantdet
