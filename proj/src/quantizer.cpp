// SPDX-License-Identifier: Apache-2.0
#include "quantdet/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quantdet {

QuantizerSpec build_quantizer(QuantKind kind, int q, std::vector<double> thresholds) {
  if (q < 1 || q > 8) throw std::invalid_argument("quantizer: q must lie in [1,8]");
  std::size_t want = (std::size_t{1} << q) - 1;
  if (thresholds.size() != want)
    throw std::invalid_argument("quantizer: expected " + std::to_string(want) +
                                " thresholds, got " + std::to_string(thresholds.size()));
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i]))
      throw std::invalid_argument("quantizer: threshold " + std::to_string(i) + " is not finite");
    if (kind == QuantKind::LQ && !(thresholds[i] > 0.0))
      throw std::invalid_argument("quantizer: LQ threshold " + std::to_string(i) +
                                  " must be positive");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
      throw std::invalid_argument("quantizer: thresholds not strictly increasing at index " +
                                  std::to_string(i));
  }
  return QuantizerSpec{kind, q, std::move(thresholds)};
}

QuantizerSpec build_lqu(int q, double sigma_w, double range_factor) {
  if (!(sigma_w > 0.0) || !(range_factor > 0.0))
    throw std::invalid_argument("lqu: sigma_w and range_factor must be positive");
  int levels = 1 << q;
  std::vector<double> taus(levels - 1);
  double step = range_factor * sigma_w / levels;
  for (int k = 1; k < levels; ++k) taus[k - 1] = k * step;
  return build_quantizer(QuantKind::LQ, q, std::move(taus));
}

int quantize(const QuantizerSpec& spec, double y) {
  double v = spec.kind == QuantKind::LQ ? std::fabs(y) : y;
  // Count of thresholds <= v; a boundary value therefore lands in the upper
  // interval.
  auto it = std::upper_bound(spec.thresholds.begin(), spec.thresholds.end(), v);
  return static_cast<int>(it - spec.thresholds.begin()) + 1;
}

std::string codeword_of(int index, int q) {
  if (q < 1 || q > 8 || index < 1 || index > (1 << q))
    throw std::invalid_argument("codeword_of: index out of range");
  std::string bits(q, '0');
  int v = index - 1;
  for (int b = 0; b < q; ++b)
    if (v >> (q - 1 - b) & 1) bits[b] = '1';
  return bits;
}

int index_of(const std::string& word) {
  if (word.empty() || word.size() > 8) throw std::invalid_argument("index_of: bad word length");
  int v = 0;
  for (char c : word) {
    if (c != '0' && c != '1') throw std::invalid_argument("index_of: non-binary digit");
    v = (v << 1) | (c - '0');
  }
  return v + 1;
}

}  // namespace quantdet
