// SPDX-License-Identifier: Apache-2.0
#include "quantdet/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace quantdet {

void SystemConfig::validate() const {
  if (num_sensors < 1) throw std::invalid_argument("system.M: must be a positive integer");
  if (signal_dim < 1) throw std::invalid_argument("system.N: must be a positive integer");
  if (!(sparsity >= 0.0 && sparsity <= 1.0))
    throw std::invalid_argument("system.p: must lie in [0,1]");
  if (!(signal_var > 0.0)) throw std::invalid_argument("system.sigma0_sq: must be positive");
  if (!(noise_var > 0.0)) throw std::invalid_argument("system.sigma_w_sq: must be positive");
  if (h_norm_sq.size() != static_cast<std::size_t>(num_sensors))
    throw std::invalid_argument("system.h_norm_sq: length must equal M");
  if (pe.size() != static_cast<std::size_t>(num_sensors))
    throw std::invalid_argument("system.pe: length must equal M");
  for (int m = 0; m < num_sensors; ++m) {
    if (!(h_norm_sq[m] > 0.0))
      throw std::invalid_argument("system.h_norm_sq[" + std::to_string(m) + "]: must be positive");
    if (!(pe[m] >= 0.0 && pe[m] < 1.0))
      throw std::invalid_argument("system.pe[" + std::to_string(m) + "]: must lie in [0,1)");
  }
}

double effective_sigma(double p, double signal_var, double h_norm_sq, double noise_var) {
  if (p < 0.0 || signal_var < 0.0 || h_norm_sq < 0.0 || !(noise_var > 0.0))
    throw std::domain_error("effective_sigma: negative input");
  return std::sqrt(p * signal_var * h_norm_sq + noise_var);
}

double snr_db(double p, double signal_var, double noise_var) {
  if (!(noise_var > 0.0)) throw std::domain_error("snr_db: noise_var must be positive");
  double ratio = p * signal_var / noise_var;
  if (ratio <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ratio);
}

SparseSignal sample_sparse_signal(int signal_dim, double p, double signal_var, Stream& rng) {
  SparseSignal s;
  double sd = std::sqrt(signal_var);
  for (int n = 0; n < signal_dim; ++n) {
    if (rng.next_bernoulli(p)) {
      s.support.push_back(n);
      s.values.push_back(sd * rng.next_normal());
    }
  }
  return s;
}

SparseSignal sample_values_on_support(const std::vector<std::int32_t>& support, double signal_var,
                                      Stream& rng) {
  SparseSignal s;
  s.support = support;
  s.values.resize(support.size());
  double sd = std::sqrt(signal_var);
  for (double& v : s.values) v = sd * rng.next_normal();
  return s;
}

double sample_measurement(const std::vector<double>& h, const SparseSignal& s, double noise_var,
                          Hypothesis hyp, Stream& rng) {
  double y = std::sqrt(noise_var) * rng.next_normal();
  if (hyp == Hypothesis::H1) {
    for (std::size_t k = 0; k < s.support.size(); ++k) y += h[s.support[k]] * s.values[k];
  }
  return y;
}

std::vector<std::vector<double>> generate_measurement_vectors(int num_sensors, int signal_dim,
                                                              Stream& rng) {
  if (num_sensors < 1 || signal_dim < 1)
    throw std::invalid_argument("generate_measurement_vectors: M and N must be positive");
  std::vector<std::vector<double>> vecs(num_sensors);
  for (auto& h : vecs) {
    h.resize(signal_dim);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (double& x : h) {
        x = rng.next_normal();
        norm_sq += x * x;
      }
    } while (norm_sq == 0.0);
    double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : h) x *= inv;
  }
  return vecs;
}

}  // namespace quantdet
