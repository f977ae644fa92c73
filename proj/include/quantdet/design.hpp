// SPDX-License-Identifier: Apache-2.0
//
// Threshold design by Fisher-information maximization. The per-sensor
// objective separates from the network constants, so thresholds are optimized
// once per (kind, q, pe) in noise-standard-deviation units: a 1-D exhaustive
// grid for q = 1 and particle-swarm search with monotonicity repair for
// larger q. Results are reported as normalized Fisher information (fraction
// of the unquantized information retained) and its reciprocal, the asymptotic
// relative efficiency (how many times more sensors the quantized detector
// needs to match the unquantized one).
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quantdet/quantizer.hpp"

namespace quantdet {

struct PsoParams {
  int swarm_size = 50;
  int iterations = 200;
  double inertia = 0.7298;
  double cognitive = 1.49445;
  double social = 1.49445;
  int restarts = 5;
  std::uint64_t seed = 12345;
  // Search box in noise-sigma units; LQ uses (0, bound_high], RQ the
  // symmetric box [-bound_high, bound_high].
  double bound_high = 6.0;

  void validate() const;
};

struct DesignResult {
  QuantizerSpec spec;        // validated thresholds (measurement units)
  double objective = 0.0;    // per-sensor information bracket == normalized_fi
  double normalized_fi = 0.0;
  double are = 0.0;          // 1 / normalized_fi
};

// Per-sensor information retained by a (kind, q, thresholds) quantizer whose
// reports cross a bit-flipping channel with crossover pe. Equal to
// normalized_fi; exposed under both names because optimization maximizes the
// bracket directly while analysis reads it as a fraction of the unquantized
// information.
double fi_objective(QuantKind kind, int q, const std::vector<double>& thresholds, double pe,
                    double sigma_w);

// Fraction of clairvoyant Fisher information retained (homogeneous sensors);
// in (0, 1].
double normalized_fi(QuantKind kind, int q, const std::vector<double>& thresholds, double pe,
                     double sigma_w = 1.0);

// Exhaustive 1-threshold search (q = 1 only) over [grid_low, grid_high] in
// noise-sigma units with the given step (also sigma units, at most 0.001);
// deterministic oracle for the swarm optimizer.
DesignResult grid_search_1d(QuantKind kind, double pe, double sigma_w, double grid_low,
                            double grid_high, double step = 0.001);

// Swarm search over 2^q - 1 thresholds with sort-based monotonicity repair.
// The result is guaranteed no worse than 1000 sorted-uniform random feasible
// samples, and for q = 1 no worse than the grid oracle.
DesignResult pso_optimize(QuantKind kind, int q, double pe, double sigma_w,
                          const PsoParams& params = PsoParams{});

// (tau, normalized_fi) pairs for a single-threshold quantizer over a grid in
// noise-sigma units; plot-ready trace of the 1-bit information curve.
std::vector<std::pair<double, double>> threshold_sweep_1b(QuantKind kind, double pe,
                                                          double grid_low, double grid_high,
                                                          double step = 0.001);

// ARE of the uniform-grid likelihood quantizer at the given span.
DesignResult lqu_design(int q, double pe, double sigma_w, double range_factor = 3.0);

// Fits the uniform-grid span so that the 1-bit, noiseless-channel ARE matches
// target_are (solved on the wide-span branch). The uniform span is a free
// parameter of the construction; this pins it to a published operating point
// instead of guessing.
double calibrate_lqu_span(double target_are, double sigma_w = 1.0);

}  // namespace quantdet
