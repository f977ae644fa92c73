// SPDX-License-Identifier: Apache-2.0
//
// q-bit scalar quantizers. RQ quantizes the raw measurement y over
// (-inf, +inf); LQ quantizes |y| over [0, +inf) (the local likelihood ratio is
// monotone in |y|, so thresholding |y| is equivalent). A spec holds the
// 2^q - 1 interior thresholds; the endpoints are implicit. Interval i
// (1-based) is [tau_{i-1}, tau_i), boundary values belong to the upper
// interval. Codewords are the natural binary labels of interval rank.
#pragma once

#include <string>
#include <vector>

namespace quantdet {

enum class QuantKind { RQ, LQ };

struct QuantizerSpec {
  QuantKind kind = QuantKind::RQ;
  int q = 1;                        // bits, 1..8
  std::vector<double> thresholds;   // 2^q - 1 strictly increasing values

  int num_intervals() const { return 1 << q; }
};

// Validates counts, strict monotonicity, and positivity for LQ. Throws
// std::invalid_argument naming the offending index.
QuantizerSpec build_quantizer(QuantKind kind, int q, std::vector<double> thresholds);

// LQ spec with the uniform grid k * (range_factor * sigma_w) / 2^q,
// k = 1 .. 2^q - 1.
QuantizerSpec build_lqu(int q, double sigma_w, double range_factor = 3.0);

// 1-based interval index of y (RQ) or |y| (LQ).
int quantize(const QuantizerSpec& spec, double y);

// Natural binary label of interval `index`: bits of (index - 1), most
// significant first, e.g. (3, q=2) -> "10".
std::string codeword_of(int index, int q);

// Inverse of codeword_of.
int index_of(const std::string& word);

}  // namespace quantdet
