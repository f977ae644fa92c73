// SPDX-License-Identifier: Apache-2.0
#include "quantdet/rng.hpp"

#include <cmath>

namespace quantdet {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
std::uint64_t derive(std::uint64_t key, std::initializer_list<std::uint64_t> path) {
  for (std::uint64_t elem : path) key = mix64(key ^ mix64(elem));
  return key;
}
}  // namespace

Stream::Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    : key_(derive(mix64(seed), path)) {}

Stream Stream::child(std::initializer_list<std::uint64_t> path) const {
  return Stream(derive(key_, path));
}

std::uint64_t Stream::next_u64() { return mix64(key_ ^ mix64(counter_++)); }

double Stream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_normal() {
  // Box-Muller; u1 is bumped away from zero so the log stays finite.
  double u1 = next_unit();
  double u2 = next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

bool Stream::next_bernoulli(double p) { return next_unit() < p; }

}  // namespace quantdet
