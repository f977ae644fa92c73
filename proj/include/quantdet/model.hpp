// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration and the sparse-signal observation model. Each of M
// sensors compresses an N-dimensional Bernoulli-Gaussian signal to a scalar
// through a fixed measurement vector h_m and adds white Gaussian noise:
//
//   H0: y_m = w_m          H1: y_m = h_m' s_m + w_m
//
// The activity pattern of s_m is drawn once per trial and shared by all
// sensors (joint sparsity); the active amplitudes are independent per sensor.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quantdet/rng.hpp"

namespace quantdet {

struct SystemConfig {
  int num_sensors = 0;              // M
  int signal_dim = 0;               // N
  double sparsity = 0.0;            // p, probability a coefficient is active
  double signal_var = 1.0;          // variance of active amplitudes
  double noise_var = 1.0;           // measurement noise variance
  std::vector<double> h_norm_sq;    // per-sensor ||h_m||^2, length M
  std::vector<double> pe;           // per-sensor bit crossover probability, length M

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SparseSignal {
  std::vector<std::int32_t> support;  // sorted active indices in [0, N)
  std::vector<double> values;         // amplitudes at the active indices
};

// sqrt(p * signal_var * h_norm_sq + noise_var): the marginal standard
// deviation of a measurement under H1 in the Gaussian approximation.
double effective_sigma(double p, double signal_var, double h_norm_sq, double noise_var);

// 10*log10(p * signal_var / noise_var). Returns -inf when the signal power is
// zero.
double snr_db(double p, double signal_var, double noise_var);

// Independent activity per index with probability p; active amplitudes are
// zero-mean Gaussians with variance signal_var.
SparseSignal sample_sparse_signal(int signal_dim, double p, double signal_var, Stream& rng);

// Draws amplitudes for a fixed support pattern (the joint-sparsity case where
// the pattern is shared but values are sensor-specific).
SparseSignal sample_values_on_support(const std::vector<std::int32_t>& support,
                                      double signal_var, Stream& rng);

// h' s + noise under H1, pure noise under H0. Uses only the active entries of
// s.
enum class Hypothesis { H0, H1 };
double sample_measurement(const std::vector<double>& h, const SparseSignal& s,
                          double noise_var, Hypothesis hyp, Stream& rng);

// M unit-norm vectors of dimension N (i.i.d. standard normal, normalized).
std::vector<std::vector<double>> generate_measurement_vectors(int num_sensors, int signal_dim,
                                                              Stream& rng);

}  // namespace quantdet
