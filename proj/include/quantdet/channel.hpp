// SPDX-License-Identifier: Apache-2.0
//
// Binary symmetric reporting channel. Each bit of a sensor's codeword flips
// independently with crossover probability pe, so the probability of receiving
// word i when word j was sent depends only on their Hamming distance d:
// pe^d * (1-pe)^(q-d). The full 2^q x 2^q table of these values is symmetric
// and doubly stochastic.
#pragma once

#include <string>
#include <vector>

#include "quantdet/rng.hpp"

namespace quantdet {

// Differing bit positions between two equal-length words.
int hamming(const std::string& a, const std::string& b);

// Hamming distance between the natural binary labels of two 1-based interval
// indices (popcount of (i-1) xor (j-1)).
int hamming_index(int i, int j);

// pe^d * (1-pe)^(q-d) for 0 <= d <= q.
double transition_prob(int q, double pe, int d);

struct TransitionMatrix {
  int q = 0;
  double pe = 0.0;
  // entry(i,j) = P(received = i | sent = j), 1-based indices.
  double entry(int i, int j) const { return probs[(i - 1) * size() + (j - 1)]; }
  int size() const { return 1 << q; }
  std::vector<double> probs;  // row-major, 2^q x 2^q
};

TransitionMatrix transition_matrix(int q, double pe);

// Flips each bit independently with probability pe. pe = 1 yields the exact
// complement (useful in tests; detector-side validation rejects pe >= 1).
std::string transmit(const std::string& word, double pe, Stream& rng);

// Same channel action on a 1-based interval index.
int transmit_index(int index, int q, double pe, Stream& rng);

}  // namespace quantdet
