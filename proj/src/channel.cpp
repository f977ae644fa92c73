// SPDX-License-Identifier: Apache-2.0
#include "quantdet/channel.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace quantdet {

int hamming(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming: word lengths differ");
  int d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k];
  return d;
}

int hamming_index(int i, int j) {
  return std::popcount(static_cast<unsigned>((i - 1) ^ (j - 1)));
}

double transition_prob(int q, double pe, int d) {
  if (d < 0 || d > q) throw std::invalid_argument("transition_prob: distance out of [0,q]");
  // 0^0 = 1 handles the noiseless and always-flip limits.
  double p = 1.0;
  for (int k = 0; k < d; ++k) p *= pe;
  for (int k = 0; k < q - d; ++k) p *= 1.0 - pe;
  return p;
}

TransitionMatrix transition_matrix(int q, double pe) {
  if (q < 1 || q > 8) throw std::invalid_argument("transition_matrix: q must lie in [1,8]");
  if (!(pe >= 0.0 && pe < 1.0))
    throw std::invalid_argument("transition_matrix: pe must lie in [0,1)");
  TransitionMatrix t;
  t.q = q;
  t.pe = pe;
  int n = 1 << q;
  // Only q+1 distinct values exist; precompute per distance.
  std::vector<double> by_dist(q + 1);
  for (int d = 0; d <= q; ++d) by_dist[d] = transition_prob(q, pe, d);
  t.probs.resize(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      t.probs[(i - 1) * static_cast<std::size_t>(n) + (j - 1)] = by_dist[hamming_index(i, j)];
  return t;
}

std::string transmit(const std::string& word, double pe, Stream& rng) {
  std::string out = word;
  for (char& c : out)
    if (rng.next_bernoulli(pe)) c = c == '0' ? '1' : '0';
  return out;
}

int transmit_index(int index, int q, double pe, Stream& rng) {
  // Most-significant bit first, mirroring the draw order of transmit() so the
  // two forms consume a stream identically.
  int v = index - 1;
  for (int b = q - 1; b >= 0; --b)
    if (rng.next_bernoulli(pe)) v ^= 1 << b;
  return v + 1;
}

}  // namespace quantdet
