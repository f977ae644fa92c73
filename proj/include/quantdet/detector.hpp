// SPDX-License-Identifier: Apache-2.0
//
// Fusion rules at the fusion center. Two quantized detectors (one over raw
// measurements, one over likelihood-ratio magnitudes) score received codewords
// with precomputed per-interval weights; the clairvoyant detector fuses the
// unquantized measurements directly and upper-bounds both. All statistics are
// normalized so that under H0 they are asymptotically standard normal, which
// makes thresholds portable: eta = ccdf_inv(pfa), pd = ccdf(eta - p*sqrt(FI)).
#pragma once

#include <vector>

#include "quantdet/channel.hpp"
#include "quantdet/model.hpp"
#include "quantdet/quantizer.hpp"

namespace quantdet {

// P(quantizer output = j) when the measurement is N(0, sigma^2): the mass of
// [tau_{j-1}, tau_j) under the scaled Gaussian. For LQ the masses describe the
// half-line and sum to 1/2 (the symbol probability carries a factor 2).
double interval_prob(QuantKind kind, const std::vector<double>& thresholds, int j, double sigma);

// tau_{j-1}*pdf(tau_{j-1}/sigma) - tau_j*pdf(tau_j/sigma): the per-interval
// sensitivity of the mass to the signal variance. Telescopes to zero over j.
double f_term(QuantKind kind, const std::vector<double>& thresholds, int j, double sigma);

struct DetectorTables {
  SystemConfig cfg;
  QuantizerSpec spec;
  std::vector<double> assumed_pe;     // channel model used to build weights
  int num_symbols = 0;                // 2^q
  std::vector<double> weights;        // M x 2^q, row-major: fusion weight per received index
  std::vector<double> xi;             // M x 2^q: sum_j G(i,j) * Q_j(0); H0 mass is (2 for LQ) * xi
  std::vector<double> sensor_scale;   // ||h_m||^2 / sigma_w^3
  double fi0 = 0.0;                   // Fisher information at p = 0
  bool degenerate = false;            // fi0 == 0; statistic undefined

  // Probability of receiving index i at sensor m under H0.
  double h0_mass(int m, int i) const;

  const TransitionMatrix& channel(int m) const { return chans[chan_idx[m]]; }

  std::vector<TransitionMatrix> chans;  // distinct matrices shared across sensors
  std::vector<int> chan_idx;            // per-sensor index into chans
};

// Precomputes weights, received-index masses, and fi0 for the given scenario
// and quantizer under the assumed per-sensor crossover probabilities.
DetectorTables build_tables(const SystemConfig& cfg, const QuantizerSpec& spec,
                            const std::vector<double>& assumed_pe);

// (sigma0^2/2) * sum_m scale_m * w_{m,i_m} / sqrt(fi0). Received indices are
// 1-based. Throws std::domain_error on degenerate tables.
double lmpt_statistic(const DetectorTables& tables, const std::vector<int>& received);

// sum_m ||h_m||^2 (y_m^2 - sigma_w^2) / (sigma_w^2 * sqrt(2 sum_m ||h_m||^4)).
double clairvoyant_statistic(const SystemConfig& cfg, const std::vector<double>& y);

// Log-probability of the received codewords when the sparsity degree is p
// (Gaussian measurement marginals with variance sigma_m^2(p)).
double log_likelihood(const DetectorTables& tables, const std::vector<int>& received, double p);

// d/dp of log_likelihood in closed form. At p = 0 equals
// sqrt(fi0) * lmpt_statistic.
double score(const DetectorTables& tables, const std::vector<int>& received, double p);

// Unquantized counterparts.
double clairvoyant_log_likelihood(const SystemConfig& cfg, const std::vector<double>& y, double p);
double clairvoyant_score(const SystemConfig& cfg, const std::vector<double>& y, double p);

// Fisher information about p carried by the received codewords (evaluated at
// sparsity p). Returns 0 for degenerate quantizers.
double fisher_information_quantized(const SystemConfig& cfg, const QuantizerSpec& spec,
                                    const std::vector<double>& pe, double p);

// (sigma0^4/2) * sum_m ||h_m||^4 / sigma_m^4(p): the unquantized bound.
double fisher_information_clairvoyant(const SystemConfig& cfg, double p);

struct OperatingPoint {
  double eta = 0.0;     // decision threshold on the normalized statistic
  double pfa = 0.0;
  double pd = 0.0;
  double lambda = 0.0;  // non-centrality p * sqrt(fi0)
};

// Asymptotic (threshold, pfa, pd) triple for a detector with information fi0
// at sparsity p.
OperatingPoint operating_point(double fi0, double p, double pfa);

struct MismatchPrediction {
  double threshold_assumed = 0.0;  // nominal threshold, assumed-model calibration
  double threshold_true = 0.0;     // threshold meeting nominal_pfa under the true channel
  double actual_pfa = 0.0;         // false-alarm rate at threshold_assumed, true channel
  double actual_pd = 0.0;          // detection rate at threshold_assumed, true channel
  double calibrated_pd = 0.0;      // detection rate at threshold_true, true channel
};

// Behavior of a detector whose weights assume pe_assumed while the channel
// actually flips bits with pe_true. Exact per-sensor mean and variance of the
// statistic (finite alphabet) under H0 and under the Gaussian-approximate H1
// at sparsity p, combined by a normal approximation over sensors. Reports two
// operating points: the naive one (threshold set as if the assumed model were
// correct) and the calibrated one (threshold adjusted so the realized
// false-alarm rate equals nominal_pfa), which isolates the weighting loss.
MismatchPrediction mismatched_asymptotics(const SystemConfig& cfg, const QuantizerSpec& spec,
                                          const std::vector<double>& pe_true,
                                          const std::vector<double>& pe_assumed, double p,
                                          double nominal_pfa);

}  // namespace quantdet
