// SPDX-License-Identifier: Apache-2.0
#include "quantdet/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quantdet/gauss.hpp"

namespace quantdet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower edge of interval j (1-based): -inf for RQ, 0 for LQ when j = 1.
double lower_edge(QuantKind kind, const std::vector<double>& taus, int j) {
  if (j == 1) return kind == QuantKind::RQ ? -kInf : 0.0;
  return taus[j - 2];
}

// Upper edge of interval j: +inf for the last interval.
double upper_edge(const std::vector<double>& taus, int j) {
  if (static_cast<std::size_t>(j) == taus.size() + 1) return kInf;
  return taus[j - 1];
}

// tau * pdf(tau / sigma) with the limit value 0 at infinite tau.
double tau_pdf(double tau, double sigma) {
  if (std::isinf(tau)) return 0.0;
  return tau * gaussian_pdf(tau / sigma);
}

void check_received(const DetectorTables& t, const std::vector<int>& received) {
  if (received.size() != static_cast<std::size_t>(t.cfg.num_sensors))
    throw std::invalid_argument("received: length must equal M");
  for (int i : received)
    if (i < 1 || i > t.num_symbols) throw std::invalid_argument("received: index out of range");
}
}  // namespace

double interval_prob(QuantKind kind, const std::vector<double>& thresholds, int j, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("interval_prob: sigma must be positive");
  double lo = lower_edge(kind, thresholds, j);
  double hi = upper_edge(thresholds, j);
  return gaussian_ccdf(lo / sigma) - gaussian_ccdf(hi / sigma);
}

double f_term(QuantKind kind, const std::vector<double>& thresholds, int j, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("f_term: sigma must be positive");
  double lo = lower_edge(kind, thresholds, j);
  double hi = upper_edge(thresholds, j);
  return tau_pdf(lo, sigma) - tau_pdf(hi, sigma);
}

DetectorTables build_tables(const SystemConfig& cfg, const QuantizerSpec& spec,
                            const std::vector<double>& assumed_pe) {
  cfg.validate();
  if (assumed_pe.size() != static_cast<std::size_t>(cfg.num_sensors))
    throw std::invalid_argument("assumed_pe: length must equal M");
  for (double pe : assumed_pe)
    if (!(pe >= 0.0 && pe < 1.0)) throw std::invalid_argument("assumed_pe: must lie in [0,1)");

  DetectorTables t;
  t.cfg = cfg;
  t.spec = spec;
  t.assumed_pe = assumed_pe;
  t.num_symbols = spec.num_intervals();
  int M = cfg.num_sensors;
  int n = t.num_symbols;
  t.weights.assign(static_cast<std::size_t>(M) * n, 0.0);
  t.xi.assign(static_cast<std::size_t>(M) * n, 0.0);
  t.sensor_scale.resize(M);
  t.chan_idx.resize(M);
  t.chans.reserve(4);

  // Cache one transition matrix per distinct crossover probability.
  for (int m = 0; m < M; ++m) {
    int found = -1;
    for (std::size_t k = 0; k < t.chans.size(); ++k)
      if (t.chans[k].pe == assumed_pe[m]) {
        found = static_cast<int>(k);
        break;
      }
    if (found < 0) {
      t.chans.push_back(transition_matrix(spec.q, assumed_pe[m]));
      found = static_cast<int>(t.chans.size()) - 1;
    }
    t.chan_idx[m] = found;
  }

  double sigma_w = std::sqrt(cfg.noise_var);
  double prefactor = spec.kind == QuantKind::RQ ? 0.25 : 0.5;
  std::vector<double> q0(n), f0(n);
  for (int j = 1; j <= n; ++j) {
    q0[j - 1] = interval_prob(spec.kind, spec.thresholds, j, sigma_w);
    f0[j - 1] = f_term(spec.kind, spec.thresholds, j, sigma_w);
  }

  double fi0 = 0.0;
  for (int m = 0; m < M; ++m) {
    const TransitionMatrix& g = t.channel(m);
    t.sensor_scale[m] = cfg.h_norm_sq[m] / (cfg.noise_var * sigma_w);
    double info_m = 0.0;
    for (int i = 1; i <= n; ++i) {
      double num = 0.0, den = 0.0;
      for (int j = 1; j <= n; ++j) {
        num += g.entry(i, j) * f0[j - 1];
        den += g.entry(i, j) * q0[j - 1];
      }
      std::size_t at = static_cast<std::size_t>(m) * n + (i - 1);
      t.xi[at] = den;
      t.weights[at] = den > 0.0 ? num / den : 0.0;
      if (den > 0.0) info_m += num * num / den;
    }
    double sm6 = cfg.noise_var * cfg.noise_var * cfg.noise_var;
    fi0 += prefactor * cfg.signal_var * cfg.signal_var * cfg.h_norm_sq[m] * cfg.h_norm_sq[m] /
           sm6 * info_m;
  }
  t.fi0 = fi0;
  // Cancellation can leave a rounding-level residue where the information is
  // exactly zero (e.g. a maximally noisy channel); measure against the
  // unquantized bound so such detectors are still flagged unusable.
  t.degenerate = !(fi0 > 1e-12 * fisher_information_clairvoyant(cfg, 0.0));
  return t;
}

double DetectorTables::h0_mass(int m, int i) const {
  double v = xi[static_cast<std::size_t>(m) * num_symbols + (i - 1)];
  return spec.kind == QuantKind::LQ ? 2.0 * v : v;
}

double lmpt_statistic(const DetectorTables& tables, const std::vector<int>& received) {
  if (tables.degenerate)
    throw std::domain_error("lmpt_statistic: degenerate quantizer (zero Fisher information)");
  check_received(tables, received);
  double acc = 0.0;
  for (int m = 0; m < tables.cfg.num_sensors; ++m)
    acc += tables.sensor_scale[m] *
           tables.weights[static_cast<std::size_t>(m) * tables.num_symbols + (received[m] - 1)];
  return 0.5 * tables.cfg.signal_var * acc / std::sqrt(tables.fi0);
}

double clairvoyant_statistic(const SystemConfig& cfg, const std::vector<double>& y) {
  if (y.size() != static_cast<std::size_t>(cfg.num_sensors))
    throw std::invalid_argument("clairvoyant_statistic: length must equal M");
  double h4 = 0.0;
  for (double h2 : cfg.h_norm_sq) h4 += h2 * h2;
  double acc = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m)
    acc += cfg.h_norm_sq[m] * (y[m] * y[m] - cfg.noise_var);
  return acc / (cfg.noise_var * std::sqrt(2.0 * h4));
}

double log_likelihood(const DetectorTables& tables, const std::vector<int>& received, double p) {
  check_received(tables, received);
  const SystemConfig& cfg = tables.cfg;
  int n = tables.num_symbols;
  double ll = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double sigma = std::sqrt(p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var);
    const TransitionMatrix& g = tables.channel(m);
    double mass = 0.0;
    for (int j = 1; j <= n; ++j)
      mass += g.entry(received[m], j) * interval_prob(tables.spec.kind, tables.spec.thresholds, j, sigma);
    if (tables.spec.kind == QuantKind::LQ) mass *= 2.0;
    ll += std::log(mass);
  }
  return ll;
}

double score(const DetectorTables& tables, const std::vector<int>& received, double p) {
  check_received(tables, received);
  const SystemConfig& cfg = tables.cfg;
  int n = tables.num_symbols;
  double acc = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double var_m = p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var;
    double sigma = std::sqrt(var_m);
    const TransitionMatrix& g = tables.channel(m);
    double num = 0.0, den = 0.0;
    for (int j = 1; j <= n; ++j) {
      num += g.entry(received[m], j) * f_term(tables.spec.kind, tables.spec.thresholds, j, sigma);
      den += g.entry(received[m], j) * interval_prob(tables.spec.kind, tables.spec.thresholds, j, sigma);
    }
    acc += 0.5 * cfg.signal_var * cfg.h_norm_sq[m] / (var_m * sigma) * (num / den);
  }
  return acc;
}

double clairvoyant_log_likelihood(const SystemConfig& cfg, const std::vector<double>& y, double p) {
  constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;
  double ll = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double var_m = p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var;
    ll += -kLogSqrt2Pi - 0.5 * std::log(var_m) - 0.5 * y[m] * y[m] / var_m;
  }
  return ll;
}

double clairvoyant_score(const SystemConfig& cfg, const std::vector<double>& y, double p) {
  double acc = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double var_m = p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var;
    acc += 0.5 * cfg.signal_var * cfg.h_norm_sq[m] * (y[m] * y[m] - var_m) / (var_m * var_m);
  }
  return acc;
}

double fisher_information_quantized(const SystemConfig& cfg, const QuantizerSpec& spec,
                                    const std::vector<double>& pe, double p) {
  cfg.validate();
  if (pe.size() != static_cast<std::size_t>(cfg.num_sensors))
    throw std::invalid_argument("fisher_information_quantized: pe length must equal M");
  int n = spec.num_intervals();
  double prefactor = spec.kind == QuantKind::RQ ? 0.25 : 0.5;
  double fi = 0.0;
  TransitionMatrix g;
  double g_pe = -1.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    if (pe[m] != g_pe) {
      g = transition_matrix(spec.q, pe[m]);
      g_pe = pe[m];
    }
    double var_m = p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var;
    double sigma = std::sqrt(var_m);
    double info_m = 0.0;
    for (int i = 1; i <= n; ++i) {
      double num = 0.0, den = 0.0;
      for (int j = 1; j <= n; ++j) {
        num += g.entry(i, j) * f_term(spec.kind, spec.thresholds, j, sigma);
        den += g.entry(i, j) * interval_prob(spec.kind, spec.thresholds, j, sigma);
      }
      if (den > 0.0) info_m += num * num / den;
    }
    fi += prefactor * cfg.signal_var * cfg.signal_var * cfg.h_norm_sq[m] * cfg.h_norm_sq[m] /
          (var_m * var_m * var_m) * info_m;
  }
  return fi;
}

double fisher_information_clairvoyant(const SystemConfig& cfg, double p) {
  double fi = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double var_m = p * cfg.signal_var * cfg.h_norm_sq[m] + cfg.noise_var;
    fi += cfg.h_norm_sq[m] * cfg.h_norm_sq[m] / (var_m * var_m);
  }
  return 0.5 * cfg.signal_var * cfg.signal_var * fi;
}

OperatingPoint operating_point(double fi0, double p, double pfa) {
  if (!(fi0 > 0.0)) throw std::domain_error("operating_point: fi0 must be positive");
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::domain_error("operating_point: pfa must lie in (0,1)");
  OperatingPoint op;
  op.eta = gaussian_ccdf_inv(pfa);
  op.pfa = pfa;
  op.lambda = p * std::sqrt(fi0);
  op.pd = gaussian_ccdf(op.eta - op.lambda);
  return op;
}

MismatchPrediction mismatched_asymptotics(const SystemConfig& cfg, const QuantizerSpec& spec,
                                          const std::vector<double>& pe_true,
                                          const std::vector<double>& pe_assumed, double p,
                                          double nominal_pfa) {
  DetectorTables assumed = build_tables(cfg, spec, pe_assumed);
  if (assumed.degenerate)
    throw std::domain_error("mismatched_asymptotics: degenerate assumed tables");
  int n = assumed.num_symbols;
  int M = cfg.num_sensors;
  double sigma_w = std::sqrt(cfg.noise_var);
  double factor = spec.kind == QuantKind::LQ ? 2.0 : 1.0;
  double stat_scale = 0.5 * cfg.signal_var / std::sqrt(assumed.fi0);

  // Moments of the statistic under the true channel, at sparsity 0 and p.
  double mean[2] = {0.0, 0.0}, var[2] = {0.0, 0.0};
  TransitionMatrix g;
  double g_pe = -1.0;
  for (int m = 0; m < M; ++m) {
    if (pe_true[m] != g_pe) {
      g = transition_matrix(spec.q, pe_true[m]);
      g_pe = pe_true[m];
    }
    double c_m = stat_scale * assumed.sensor_scale[m];
    for (int hyp = 0; hyp < 2; ++hyp) {
      double sigma = hyp == 0 ? sigma_w
                              : effective_sigma(p, cfg.signal_var, cfg.h_norm_sq[m], cfg.noise_var);
      double mu_m = 0.0, m2_m = 0.0;
      for (int i = 1; i <= n; ++i) {
        double mass = 0.0;
        for (int j = 1; j <= n; ++j)
          mass += g.entry(i, j) * interval_prob(spec.kind, spec.thresholds, j, sigma);
        mass *= factor;
        double w = assumed.weights[static_cast<std::size_t>(m) * n + (i - 1)];
        mu_m += mass * w;
        m2_m += mass * w * w;
      }
      mean[hyp] += c_m * mu_m;
      var[hyp] += c_m * c_m * (m2_m - mu_m * mu_m);
    }
  }

  double z = gaussian_ccdf_inv(nominal_pfa);
  double sd0 = std::sqrt(var[0]), sd1 = std::sqrt(var[1]);
  MismatchPrediction out;
  out.threshold_assumed = z;
  out.threshold_true = mean[0] + sd0 * z;
  out.actual_pfa = gaussian_ccdf((z - mean[0]) / sd0);
  out.actual_pd = gaussian_ccdf((z - mean[1]) / sd1);
  out.calibrated_pd = gaussian_ccdf((out.threshold_true - mean[1]) / sd1);
  return out;
}

}  // namespace quantdet
