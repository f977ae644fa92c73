// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo experiment engine. Each run sweeps one axis (false-alarm
// grid, sensor count, SNR, or the fusion center's assumed crossover
// probability), simulates sample -> quantize -> transmit -> fuse -> threshold
// per trial, and reports empirical detection/false-alarm rates next to the
// asymptotic theory values. All randomness derives from (seed, sweep point,
// hypothesis, trial, role) stream paths, so results are byte-identical for
// any worker-thread count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quantdet/design.hpp"
#include "quantdet/model.hpp"
#include "quantdet/quantizer.hpp"

namespace quantdet {

inline constexpr char kVersion[] = "1.0.0";

enum class GenerationMode {
  Exact,           // Bernoulli support shared across sensors, exact conditional law
  GaussianApprox,  // marginal Gaussian with the H1 effective variance
};

enum class SweepAxis { Pfa, Sensors, SnrDb, AssumedPe };

// A quantizer column in an experiment: either explicit thresholds or a design
// request resolved by the swarm optimizer before the run.
struct QuantizerRequest {
  std::string label;
  QuantKind kind = QuantKind::RQ;
  int q = 1;
  std::vector<double> thresholds;  // empty when `design` is set
  bool design = false;
  double design_pe = 0.0;
  std::uint64_t design_seed = 12345;
};

struct ExperimentConfig {
  SystemConfig system;
  std::vector<QuantizerRequest> quantizers;
  bool fuse_rq = true;           // run LMPT fusion for RQ quantizers
  bool fuse_lq = true;           // run LMPT fusion for LQ quantizers
  bool fuse_clairvoyant = false; // add the unquantized reference detector
  int trials = 5000;
  std::uint64_t seed = 0;
  GenerationMode mode = GenerationMode::Exact;
  SweepAxis axis = SweepAxis::Pfa;
  std::vector<double> sweep_values;
  double pfa = 0.1;  // operating point for sweeps that fix the false-alarm rate
  int threads = 1;   // worker threads; never affects results

  // Structural checks (positive trials, sweep values valid for the axis,
  // quantizer/detector consistency). Throws std::invalid_argument.
  void validate() const;
};

struct ResultRow {
  double sweep = 0.0;
  std::string detector;
  double pfa_theory = 0.0;
  double pd_theory = 0.0;
  double pfa_mc = 0.0;
  double pd_mc = 0.0;
  double ci = 0.0;  // 99% binomial half-width on pd_mc
  int trials = 0;
  bool degenerate = false;  // warning row: detector skipped, stats are NaN
};

struct ExperimentResult {
  std::string command;  // producing operation, recorded in the manifest
  std::vector<ResultRow> rows;
};

// ROC sweep over a false-alarm grid (one trial set shared by all grid points).
ExperimentResult run_roc(const ExperimentConfig& cfg);

// Detection probability versus sensor count at the configured false-alarm
// rate. Requires homogeneous per-sensor parameters.
ExperimentResult run_pd_vs_sensors(const ExperimentConfig& cfg);

// Detection probability versus SNR in dB; the sweep rescales the signal
// variance at fixed sparsity and noise floor.
ExperimentResult run_pd_vs_snr(const ExperimentConfig& cfg);

// Fusion weights built from each assumed crossover value on the sweep while
// bits actually flip at the system's true value. One trial set is shared by
// all assumed values, so the comparison is paired. Theory columns carry the
// analytic mismatch prediction.
ExperimentResult run_mismatch(const ExperimentConfig& cfg);

// One optimized-design row per (kind, q, pe); kind is "rq", "lq", or "lqu"
// (uniform grid at the default span).
struct DesignTableRow {
  std::string kind;
  int q = 0;
  double pe = 0.0;
  DesignResult result;
};
std::vector<DesignTableRow> run_design_table(const std::vector<std::string>& kinds,
                                             const std::vector<int>& qs,
                                             const std::vector<double>& pes, double sigma_w,
                                             std::uint64_t seed);

// 2.576 * sqrt(phat (1 - phat) / trials).
double ci_half_width(double phat, int trials);

// CSV with header sweep,detector,pfa_theory,pd_theory,pfa_mc,pd_mc,ci,trials.
std::string render_csv(const ExperimentResult& result);

// CSV with header kind,q,pe,are,normalized_fi,thresholds (thresholds joined
// by ';').
std::string render_design_csv(const std::vector<DesignTableRow>& rows);

// Provenance record written alongside every output. Contains no timestamps
// and no parallelism parameters: (config, seed) alone determine it.
std::string render_manifest(const std::string& command, std::uint64_t config_hash,
                            std::uint64_t seed, int trials, const std::string& mode,
                            std::size_t rows);

// FNV-1a 64-bit hash, used to fingerprint config text in manifests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace quantdet
