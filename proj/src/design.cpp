// SPDX-License-Identifier: Apache-2.0
#include "quantdet/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quantdet/channel.hpp"
#include "quantdet/detector.hpp"
#include "quantdet/gauss.hpp"
#include "quantdet/rng.hpp"

namespace quantdet {

void PsoParams::validate() const {
  if (swarm_size < 1 || iterations < 1 || restarts < 1)
    throw std::invalid_argument("pso: swarm_size, iterations, restarts must be >= 1");
  if (!(bound_high > 0.0)) throw std::invalid_argument("pso: bound_high must be positive");
}

namespace {

// Objective evaluation on a sorted threshold vector (sigma_w units, sigma = 1).
// Ties between thresholds are tolerated here (empty intervals contribute
// nothing); strictness is enforced when the final result is packaged.
double objective_sorted(QuantKind kind, int q, const std::vector<double>& taus, double pe) {
  int n = 1 << q;
  TransitionMatrix g = transition_matrix(q, pe);
  std::vector<double> q0(n), f0(n);
  for (int j = 1; j <= n; ++j) {
    q0[j - 1] = interval_prob(kind, taus, j, 1.0);
    f0[j - 1] = f_term(kind, taus, j, 1.0);
  }
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    double num = 0.0, den = 0.0;
    for (int j = 1; j <= n; ++j) {
      num += g.entry(i, j) * f0[j - 1];
      den += g.entry(i, j) * q0[j - 1];
    }
    if (den > 0.0) sum += num * num / den;
  }
  return kind == QuantKind::RQ ? 0.5 * sum : sum;
}

// Packages a threshold vector (sigma_w units) into a validated result,
// nudging any residual ties apart by one ulp so the strictly-increasing
// threshold requirement holds without altering the objective measurably.
DesignResult package(QuantKind kind, int q, std::vector<double> taus, double pe, double sigma_w) {
  std::sort(taus.begin(), taus.end());
  double floor_value = kind == QuantKind::LQ ? 0.0 : -std::numeric_limits<double>::infinity();
  for (double& tau : taus) {
    if (!(tau > floor_value)) tau = std::nextafter(floor_value, 1e300);
    floor_value = tau;
  }
  DesignResult r;
  r.objective = objective_sorted(kind, q, taus, pe);
  r.normalized_fi = r.objective;
  r.are = 1.0 / r.normalized_fi;
  for (double& tau : taus) tau *= sigma_w;
  r.spec = build_quantizer(kind, q, std::move(taus));
  return r;
}

}  // namespace

double fi_objective(QuantKind kind, int q, const std::vector<double>& thresholds, double pe,
                    double sigma_w) {
  if (!(sigma_w > 0.0)) throw std::invalid_argument("fi_objective: sigma_w must be positive");
  if (!(pe >= 0.0 && pe < 1.0)) throw std::invalid_argument("fi_objective: pe must lie in [0,1)");
  // Validation via the quantizer constructor (counts, monotonicity, sign).
  QuantizerSpec spec = build_quantizer(kind, q, thresholds);
  std::vector<double> scaled(spec.thresholds);
  for (double& tau : scaled) tau /= sigma_w;
  return objective_sorted(kind, q, scaled, pe);
}

double normalized_fi(QuantKind kind, int q, const std::vector<double>& thresholds, double pe,
                     double sigma_w) {
  return fi_objective(kind, q, thresholds, pe, sigma_w);
}

DesignResult grid_search_1d(QuantKind kind, double pe, double sigma_w, double grid_low,
                            double grid_high, double step) {
  if (!(step > 0.0) || !(grid_high > grid_low))
    throw std::invalid_argument("grid_search_1d: empty grid");
  if (step > 0.001) throw std::invalid_argument("grid_search_1d: step must be <= 0.001 sigma_w");
  double best_tau = 0.0, best_val = -1.0;
  long steps = std::lround(std::floor((grid_high - grid_low) / step));
  for (long k = 0; k <= steps; ++k) {
    double tau = grid_low + k * step;
    if (kind == QuantKind::LQ && !(tau > 0.0)) continue;
    double val = objective_sorted(kind, 1, {tau}, pe);
    if (val > best_val) {
      best_val = val;
      best_tau = tau;
    }
  }
  if (best_val < 0.0) throw std::invalid_argument("grid_search_1d: no feasible grid point");
  return package(kind, 1, {best_tau}, pe, sigma_w);
}

std::vector<std::pair<double, double>> threshold_sweep_1b(QuantKind kind, double pe,
                                                          double grid_low, double grid_high,
                                                          double step) {
  if (!(step > 0.0) || !(grid_high > grid_low))
    throw std::invalid_argument("threshold_sweep_1b: empty grid");
  std::vector<std::pair<double, double>> trace;
  long steps = std::lround(std::floor((grid_high - grid_low) / step));
  trace.reserve(static_cast<std::size_t>(steps + 1));
  for (long k = 0; k <= steps; ++k) {
    double tau = grid_low + k * step;
    if (kind == QuantKind::LQ && !(tau > 0.0)) continue;
    trace.emplace_back(tau, objective_sorted(kind, 1, {tau}, pe));
  }
  return trace;
}

DesignResult pso_optimize(QuantKind kind, int q, double pe, double sigma_w,
                          const PsoParams& params) {
  params.validate();
  if (q < 1 || q > 8) throw std::invalid_argument("pso_optimize: q must lie in [1,8]");
  if (!(pe >= 0.0 && pe < 1.0)) throw std::invalid_argument("pso_optimize: pe must lie in [0,1)");
  int dim = (1 << q) - 1;
  double hi = params.bound_high;
  double lo = kind == QuantKind::LQ ? 1e-9 : -hi;

  std::vector<double> best_x;
  double best_val = -1.0;
  auto consider = [&](const std::vector<double>& x, double val) {
    if (val > best_val) {
      best_val = val;
      best_x = x;
    }
  };

  // Deterministic warm starts shared by every restart: the equal-probability
  // lattice and a few uniform-span lattices. They anchor the swarm in sane
  // regions of the landscape so a fixed iteration budget converges reliably;
  // random particles still dominate the population.
  std::vector<std::vector<double>> warm;
  {
    std::vector<double> lattice(dim);
    int levels = 1 << q;
    for (int d = 0; d < dim; ++d) {
      double mass = static_cast<double>(d + 1) / levels;
      lattice[d] = kind == QuantKind::RQ ? gaussian_ccdf_inv(1.0 - mass)
                                         : gaussian_ccdf_inv(0.5 * (1.0 - mass));
    }
    warm.push_back(lattice);
    for (double span : {2.0, 3.0, 4.0, 5.0}) {
      for (int d = 0; d < dim; ++d) {
        double step = span / levels;
        lattice[d] = kind == QuantKind::RQ ? (d + 1) * step - 0.5 * span : (d + 1) * step;
      }
      warm.push_back(lattice);
    }
  }

  std::vector<double> work;
  for (int restart = 0; restart < params.restarts; ++restart) {
    Stream rng(params.seed, {0x505350u /* swarm */, static_cast<std::uint64_t>(restart)});
    int Q = params.swarm_size;
    std::vector<std::vector<double>> pos(Q), vel(Q), pbest(Q);
    std::vector<double> pbest_val(Q, -1.0);
    std::vector<double> gbest;
    double gbest_val = -1.0;
    for (int k = 0; k < Q; ++k) {
      pos[k].resize(dim);
      vel[k].resize(dim);
      for (int d = 0; d < dim; ++d) {
        pos[k][d] = lo + (hi - lo) * rng.next_unit();
        vel[k][d] = 0.2 * (hi - lo) * (rng.next_unit() - 0.5);
      }
      if (k < static_cast<int>(warm.size())) pos[k] = warm[k];
      std::sort(pos[k].begin(), pos[k].end());
      pbest[k] = pos[k];
      pbest_val[k] = objective_sorted(kind, q, pos[k], pe);
      if (pbest_val[k] > gbest_val) {
        gbest_val = pbest_val[k];
        gbest = pos[k];
      }
    }
    for (int it = 0; it < params.iterations; ++it) {
      for (int k = 0; k < Q; ++k) {
        for (int d = 0; d < dim; ++d) {
          double r1 = rng.next_unit();
          double r2 = rng.next_unit();
          vel[k][d] = params.inertia * vel[k][d] +
                      params.cognitive * r1 * (pbest[k][d] - pos[k][d]) +
                      params.social * r2 * (gbest[d] - pos[k][d]);
          pos[k][d] += vel[k][d];
          if (pos[k][d] < lo) {
            pos[k][d] = lo;
            vel[k][d] = 0.0;
          } else if (pos[k][d] > hi) {
            pos[k][d] = hi;
            vel[k][d] = 0.0;
          }
        }
        std::sort(pos[k].begin(), pos[k].end());
        double val = objective_sorted(kind, q, pos[k], pe);
        if (val > pbest_val[k]) {
          pbest_val[k] = val;
          pbest[k] = pos[k];
        }
        if (val > gbest_val) {
          gbest_val = val;
          gbest = pos[k];
        }
      }
    }
    consider(gbest, gbest_val);
  }

  // Random-sampling floor: the swarm result may never fall below the best of
  // 1000 sorted-uniform feasible draws.
  Stream rng(params.seed, {0x53414d50u /* samples */});
  work.resize(dim);
  for (int s = 0; s < 1000; ++s) {
    for (int d = 0; d < dim; ++d) work[d] = lo + (hi - lo) * rng.next_unit();
    std::sort(work.begin(), work.end());
    consider(work, objective_sorted(kind, q, work, pe));
  }

  // Grid oracle guards the one-dimensional case.
  if (q == 1) {
    DesignResult g = grid_search_1d(kind, pe, 1.0, kind == QuantKind::LQ ? 0.001 : -hi, hi);
    consider(g.spec.thresholds, g.objective);
  }

  return package(kind, q, best_x, pe, sigma_w);
}

DesignResult lqu_design(int q, double pe, double sigma_w, double range_factor) {
  QuantizerSpec spec = build_lqu(q, sigma_w, range_factor);
  std::vector<double> scaled(spec.thresholds);
  for (double& tau : scaled) tau /= sigma_w;
  DesignResult r;
  r.objective = objective_sorted(QuantKind::LQ, q, scaled, pe);
  r.normalized_fi = r.objective;
  r.are = 1.0 / r.normalized_fi;
  r.spec = std::move(spec);
  return r;
}

double calibrate_lqu_span(double target_are, double sigma_w) {
  if (!(target_are > 1.0)) throw std::invalid_argument("calibrate_lqu_span: target must exceed 1");
  // 1-bit uniform quantizer has the single threshold rf*sigma_w/2. ARE grows
  // with the span once past the optimum, so bisect on the wide branch.
  auto are_at = [&](double rf) { return lqu_design(1, 0.0, sigma_w, rf).are; };
  // Locate the optimum span first (coarse descent), then bracket rightward.
  double rf_lo = 0.5, best = rf_lo;
  double best_are = are_at(rf_lo);
  for (double rf = 0.6; rf <= 8.0; rf += 0.1) {
    double a = are_at(rf);
    if (a < best_are) {
      best_are = a;
      best = rf;
    }
  }
  if (target_are < best_are)
    throw std::invalid_argument("calibrate_lqu_span: target below the attainable minimum");
  double left = best, right = 40.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (left + right);
    if (are_at(mid) < target_are)
      left = mid;
    else
      right = mid;
  }
  return 0.5 * (left + right);
}

}  // namespace quantdet
