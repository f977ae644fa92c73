// SPDX-License-Identifier: Apache-2.0
#include "quantdet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>

#include "quantdet/detector.hpp"
#include "quantdet/gauss.hpp"

namespace quantdet {
namespace {

constexpr std::uint64_t kTagH = 0x68;      // measurement-vector draw
constexpr std::uint64_t kTagTrial = 0x74;  // per-trial root
constexpr std::uint64_t kRoleSupport = 1;
constexpr std::uint64_t kRoleMeasure = 2;
constexpr std::uint64_t kRoleChannel = 3;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool all_equal(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

std::vector<QuantizerSpec> resolve_specs(const ExperimentConfig& cfg) {
  double sigma_w = std::sqrt(cfg.system.noise_var);
  std::vector<QuantizerSpec> specs;
  specs.reserve(cfg.quantizers.size());
  for (const auto& req : cfg.quantizers) {
    if (req.design) {
      PsoParams params;
      params.seed = req.design_seed;
      specs.push_back(pso_optimize(req.kind, req.q, req.design_pe, sigma_w, params).spec);
    } else {
      specs.push_back(build_quantizer(req.kind, req.q, req.thresholds));
    }
  }
  return specs;
}

struct BuiltDetector {
  std::string label;
  bool clairvoyant = false;
  QuantizerSpec spec;
  DetectorTables tables;
  bool degenerate = false;
  double fi0 = 0.0;
};

// Instantiates the enabled detectors for one sweep point. `assumed_pe` feeds
// the fusion tables; the channel itself always flips at the system's values.
std::vector<BuiltDetector> build_detectors(const ExperimentConfig& cfg, const SystemConfig& sys,
                                           const std::vector<QuantizerSpec>& specs,
                                           const std::vector<double>& assumed_pe,
                                           bool include_clairvoyant) {
  std::vector<BuiltDetector> dets;
  for (std::size_t i = 0; i < cfg.quantizers.size(); ++i) {
    const auto& req = cfg.quantizers[i];
    bool enabled = req.kind == QuantKind::RQ ? cfg.fuse_rq : cfg.fuse_lq;
    if (!enabled) continue;
    BuiltDetector d;
    d.label = req.label;
    d.spec = specs[i];
    d.tables = build_tables(sys, d.spec, assumed_pe);
    d.degenerate = d.tables.degenerate;
    d.fi0 = d.tables.fi0;
    dets.push_back(std::move(d));
  }
  if (include_clairvoyant && cfg.fuse_clairvoyant) {
    BuiltDetector d;
    d.label = "clairvoyant";
    d.clairvoyant = true;
    d.fi0 = fisher_information_clairvoyant(sys, 0.0);
    dets.push_back(std::move(d));
  }
  if (dets.empty()) throw std::invalid_argument("experiment: no detectors enabled");
  bool any_usable = false;
  for (const auto& d : dets)
    if (!d.degenerate) any_usable = true;
  if (!any_usable) throw std::domain_error("experiment: every detector is degenerate");
  return dets;
}

// Unit-norm measurement vectors (scaled to the configured norms), drawn once
// per sweep point. Only the exact generation mode needs them.
std::vector<std::vector<double>> make_h(const ExperimentConfig& cfg, const SystemConfig& sys,
                                        int sweep_idx) {
  if (cfg.mode != GenerationMode::Exact) return {};
  Stream hs(cfg.seed, {kTagH, static_cast<std::uint64_t>(sweep_idx)});
  auto h = generate_measurement_vectors(sys.num_sensors, sys.signal_dim, hs);
  for (int m = 0; m < sys.num_sensors; ++m) {
    double norm = sys.h_norm_sq[m];
    if (norm != 1.0) {
      double s = std::sqrt(norm);
      for (double& x : h[m]) x *= s;
    }
  }
  return h;
}

// One trial's measurement vector. Exact mode draws the shared activity
// pattern, conditions on it (the projection of a Gaussian onto h is Gaussian
// with variance sigma0^2 * sum of active h^2), and adds noise; the
// Gaussian-approx mode draws straight from the marginal effective variance.
void gen_measurements(const SystemConfig& sys, GenerationMode mode, int hyp,
                      const std::vector<std::vector<double>>& h, const Stream& trial,
                      std::vector<double>& y, std::vector<int>& active) {
  const int num_sensors = sys.num_sensors;
  y.resize(num_sensors);
  if (hyp == 0) {
    double sw = std::sqrt(sys.noise_var);
    for (int m = 0; m < num_sensors; ++m) {
      Stream s = trial.child({kRoleMeasure, static_cast<std::uint64_t>(m)});
      y[m] = sw * s.next_normal();
    }
    return;
  }
  if (mode == GenerationMode::GaussianApprox) {
    for (int m = 0; m < num_sensors; ++m) {
      double sigma = effective_sigma(sys.sparsity, sys.signal_var, sys.h_norm_sq[m], sys.noise_var);
      Stream s = trial.child({kRoleMeasure, static_cast<std::uint64_t>(m)});
      y[m] = sigma * s.next_normal();
    }
    return;
  }
  Stream sup = trial.child({kRoleSupport});
  active.clear();
  for (int n = 0; n < sys.signal_dim; ++n)
    if (sup.next_bernoulli(sys.sparsity)) active.push_back(n);
  for (int m = 0; m < num_sensors; ++m) {
    double v = 0.0;
    const std::vector<double>& hm = h[m];
    for (int n : active) v += hm[n] * hm[n];
    double sigma = std::sqrt(sys.signal_var * v + sys.noise_var);
    Stream s = trial.child({kRoleMeasure, static_cast<std::uint64_t>(m)});
    y[m] = sigma * s.next_normal();
  }
}

// Quantize and transmit one detector's reports for the whole network.
void send_reports(const QuantizerSpec& spec, const SystemConfig& sys, const std::vector<double>& y,
                  const Stream& trial, int det_idx, std::vector<int>& received) {
  const int num_sensors = sys.num_sensors;
  received.resize(num_sensors);
  for (int m = 0; m < num_sensors; ++m) {
    int sent = quantize(spec, y[m]);
    Stream chan = trial.child(
        {kRoleChannel, static_cast<std::uint64_t>(det_idx), static_cast<std::uint64_t>(m)});
    received[m] = transmit_index(sent, spec.q, sys.pe[m], chan);
  }
}

int effective_workers(int threads, int trials) {
  return std::max(1, std::min({threads, trials, 64}));
}

// Runs fn(worker, begin, end) over a contiguous partition of [0, trials).
template <typename Fn>
void parallel_trials(int trials, int workers, const Fn& fn) {
  if (workers <= 1) {
    fn(0, 0, trials);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int begin = w * chunk;
    int end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& th : pool) th.join();
}

std::vector<std::int64_t> reduce_counts(const std::vector<std::vector<std::int64_t>>& per_worker) {
  std::vector<std::int64_t> total(per_worker.front().size(), 0);
  for (const auto& part : per_worker)
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += part[j];
  return total;
}

std::string format_probability(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_sweep(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void append_row(std::string& out, const ResultRow& row) {
  out += format_sweep(row.sweep);
  out += ',';
  out += row.detector;
  out += ',';
  out += format_probability(row.pfa_theory);
  out += ',';
  out += format_probability(row.pd_theory);
  out += ',';
  out += format_probability(row.pfa_mc);
  out += ',';
  out += format_probability(row.pd_mc);
  out += ',';
  out += format_probability(row.ci);
  out += ',';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d", row.trials);
  out += buf;
  out += '\n';
}

ResultRow warning_row(double sweep, const std::string& label, int trials) {
  ResultRow row;
  row.sweep = sweep;
  row.detector = label;
  row.pfa_theory = kNaN;
  row.pd_theory = kNaN;
  row.pfa_mc = kNaN;
  row.pd_mc = kNaN;
  row.ci = kNaN;
  row.trials = trials;
  row.degenerate = true;
  return row;
}

// Shared kernel for the single-operating-point sweeps: counts threshold
// exceedances per detector under both hypotheses at one sweep point.
std::vector<std::int64_t> run_point(const ExperimentConfig& cfg, const SystemConfig& sys,
                                    const std::vector<BuiltDetector>& dets, int sweep_idx,
                                    double eta) {
  const int num_dets = static_cast<int>(dets.size());
  auto h = make_h(cfg, sys, sweep_idx);
  int workers = effective_workers(cfg.threads, cfg.trials);
  std::vector<std::vector<std::int64_t>> counts(
      workers, std::vector<std::int64_t>(static_cast<std::size_t>(num_dets) * 2, 0));
  parallel_trials(cfg.trials, workers, [&](int w, int begin, int end) {
    std::vector<double> y;
    std::vector<int> active, received;
    for (int t = begin; t < end; ++t) {
      for (int hyp = 0; hyp < 2; ++hyp) {
        Stream trial(cfg.seed, {kTagTrial, static_cast<std::uint64_t>(sweep_idx),
                                static_cast<std::uint64_t>(hyp), static_cast<std::uint64_t>(t)});
        gen_measurements(sys, cfg.mode, hyp, h, trial, y, active);
        for (int d = 0; d < num_dets; ++d) {
          if (dets[d].degenerate) continue;
          double stat = dets[d].clairvoyant ? clairvoyant_statistic(sys, y)
                                            : (send_reports(dets[d].spec, sys, y, trial, d, received),
                                               lmpt_statistic(dets[d].tables, received));
          if (stat > eta) ++counts[w][static_cast<std::size_t>(d) * 2 + hyp];
        }
      }
    }
  });
  return reduce_counts(counts);
}

void append_point_rows(ExperimentResult& result, const ExperimentConfig& cfg,
                       const SystemConfig& sys, const std::vector<BuiltDetector>& dets,
                       const std::vector<std::int64_t>& totals, double sweep_value) {
  for (std::size_t d = 0; d < dets.size(); ++d) {
    if (dets[d].degenerate) {
      result.rows.push_back(warning_row(sweep_value, dets[d].label, cfg.trials));
      continue;
    }
    ResultRow row;
    row.sweep = sweep_value;
    row.detector = dets[d].label;
    OperatingPoint op = operating_point(dets[d].fi0, sys.sparsity, cfg.pfa);
    row.pfa_theory = op.pfa;
    row.pd_theory = op.pd;
    row.pfa_mc = static_cast<double>(totals[d * 2 + 0]) / cfg.trials;
    row.pd_mc = static_cast<double>(totals[d * 2 + 1]) / cfg.trials;
    row.ci = ci_half_width(row.pd_mc, cfg.trials);
    row.trials = cfg.trials;
    result.rows.push_back(std::move(row));
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  system.validate();
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("experiment: pfa must lie in (0,1)");
  if (quantizers.empty() && !fuse_clairvoyant)
    throw std::invalid_argument("experiment: no quantizers and clairvoyant fusion disabled");
  for (std::size_t i = 0; i < quantizers.size(); ++i) {
    const auto& req = quantizers[i];
    if (req.label.empty()) throw std::invalid_argument("experiment: quantizer label is empty");
    for (std::size_t j = 0; j < i; ++j)
      if (quantizers[j].label == req.label)
        throw std::invalid_argument("experiment: duplicate quantizer label '" + req.label + "'");
    if (req.design) {
      if (!(req.design_pe >= 0.0 && req.design_pe < 0.5))
        throw std::invalid_argument("experiment: design pe must lie in [0, 0.5)");
    } else if (req.thresholds.empty()) {
      throw std::invalid_argument("experiment: quantizer '" + req.label +
                                  "' has neither thresholds nor a design request");
    }
  }
  if (sweep_values.empty()) throw std::invalid_argument("experiment: sweep values are empty");
  switch (axis) {
    case SweepAxis::Pfa:
      for (double v : sweep_values)
        if (!(v > 0.0 && v < 1.0))
          throw std::invalid_argument("experiment: pfa sweep values must lie in (0,1)");
      break;
    case SweepAxis::Sensors:
      for (double v : sweep_values)
        if (!(v >= 1.0) || v != std::floor(v))
          throw std::invalid_argument("experiment: sensor sweep values must be positive integers");
      if (!all_equal(system.pe) || !all_equal(system.h_norm_sq))
        throw std::invalid_argument(
            "experiment: sensor-count sweep requires homogeneous pe and h_norm_sq");
      break;
    case SweepAxis::SnrDb:
      for (double v : sweep_values)
        if (!std::isfinite(v))
          throw std::invalid_argument("experiment: snr sweep values must be finite");
      if (!(system.sparsity > 0.0))
        throw std::invalid_argument("experiment: snr sweep requires positive sparsity");
      break;
    case SweepAxis::AssumedPe:
      for (double v : sweep_values)
        if (!(v >= 0.0 && v < 0.5))
          throw std::invalid_argument("experiment: assumed-pe sweep values must lie in [0, 0.5)");
      break;
  }
}

double ci_half_width(double phat, int trials) {
  if (trials < 1) return 0.0;
  double v = phat * (1.0 - phat) / trials;
  return 2.576 * std::sqrt(std::max(0.0, v));
}

ExperimentResult run_roc(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.axis != SweepAxis::Pfa)
    throw std::invalid_argument("roc: sweep axis must be the false-alarm grid");
  const SystemConfig& sys = cfg.system;
  auto specs = resolve_specs(cfg);
  auto dets = build_detectors(cfg, sys, specs, sys.pe, true);
  const int num_dets = static_cast<int>(dets.size());
  const int num_pts = static_cast<int>(cfg.sweep_values.size());

  std::vector<double> eta(num_pts);
  for (int k = 0; k < num_pts; ++k) eta[k] = gaussian_ccdf_inv(cfg.sweep_values[k]);

  auto h = make_h(cfg, sys, 0);
  int workers = effective_workers(cfg.threads, cfg.trials);
  std::vector<std::vector<std::int64_t>> counts(
      workers,
      std::vector<std::int64_t>(static_cast<std::size_t>(num_dets) * num_pts * 2, 0));
  parallel_trials(cfg.trials, workers, [&](int w, int begin, int end) {
    std::vector<double> y;
    std::vector<int> active, received;
    for (int t = begin; t < end; ++t) {
      for (int hyp = 0; hyp < 2; ++hyp) {
        Stream trial(cfg.seed, {kTagTrial, 0, static_cast<std::uint64_t>(hyp),
                                static_cast<std::uint64_t>(t)});
        gen_measurements(sys, cfg.mode, hyp, h, trial, y, active);
        for (int d = 0; d < num_dets; ++d) {
          if (dets[d].degenerate) continue;
          double stat = dets[d].clairvoyant ? clairvoyant_statistic(sys, y)
                                            : (send_reports(dets[d].spec, sys, y, trial, d, received),
                                               lmpt_statistic(dets[d].tables, received));
          for (int k = 0; k < num_pts; ++k)
            if (stat > eta[k])
              ++counts[w][(static_cast<std::size_t>(d) * num_pts + k) * 2 + hyp];
        }
      }
    }
  });
  auto totals = reduce_counts(counts);

  ExperimentResult result;
  result.command = "roc";
  for (int k = 0; k < num_pts; ++k) {
    double pfa = cfg.sweep_values[k];
    for (int d = 0; d < num_dets; ++d) {
      if (dets[d].degenerate) {
        result.rows.push_back(warning_row(pfa, dets[d].label, cfg.trials));
        continue;
      }
      ResultRow row;
      row.sweep = pfa;
      row.detector = dets[d].label;
      row.pfa_theory = pfa;
      row.pd_theory = operating_point(dets[d].fi0, sys.sparsity, pfa).pd;
      std::size_t base = (static_cast<std::size_t>(d) * num_pts + k) * 2;
      row.pfa_mc = static_cast<double>(totals[base + 0]) / cfg.trials;
      row.pd_mc = static_cast<double>(totals[base + 1]) / cfg.trials;
      row.ci = ci_half_width(row.pd_mc, cfg.trials);
      row.trials = cfg.trials;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

ExperimentResult run_pd_vs_sensors(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.axis != SweepAxis::Sensors)
    throw std::invalid_argument("pd-vs-m: sweep axis must be sensor counts");
  auto specs = resolve_specs(cfg);
  double eta = gaussian_ccdf_inv(cfg.pfa);

  ExperimentResult result;
  result.command = "pd-vs-m";
  for (std::size_t s = 0; s < cfg.sweep_values.size(); ++s) {
    SystemConfig sys = cfg.system;
    sys.num_sensors = static_cast<int>(cfg.sweep_values[s]);
    sys.pe.assign(sys.num_sensors, cfg.system.pe.front());
    sys.h_norm_sq.assign(sys.num_sensors, cfg.system.h_norm_sq.front());
    auto dets = build_detectors(cfg, sys, specs, sys.pe, true);
    auto totals = run_point(cfg, sys, dets, static_cast<int>(s), eta);
    append_point_rows(result, cfg, sys, dets, totals, cfg.sweep_values[s]);
  }
  return result;
}

ExperimentResult run_pd_vs_snr(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.axis != SweepAxis::SnrDb)
    throw std::invalid_argument("pd-vs-snr: sweep axis must be an SNR grid");
  auto specs = resolve_specs(cfg);
  double eta = gaussian_ccdf_inv(cfg.pfa);

  ExperimentResult result;
  result.command = "pd-vs-snr";
  for (std::size_t s = 0; s < cfg.sweep_values.size(); ++s) {
    SystemConfig sys = cfg.system;
    // SNR in dB fixes p * sigma0^2 / sigma_w^2; the sweep realizes it
    // through the signal variance.
    sys.signal_var =
        sys.noise_var * std::pow(10.0, cfg.sweep_values[s] / 10.0) / sys.sparsity;
    auto dets = build_detectors(cfg, sys, specs, sys.pe, true);
    auto totals = run_point(cfg, sys, dets, static_cast<int>(s), eta);
    append_point_rows(result, cfg, sys, dets, totals, cfg.sweep_values[s]);
  }
  return result;
}

ExperimentResult run_mismatch(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.axis != SweepAxis::AssumedPe)
    throw std::invalid_argument("mismatch: sweep axis must be an assumed-pe grid");
  const SystemConfig& sys = cfg.system;
  auto specs = resolve_specs(cfg);
  // Only quantized reports pass through the mis-modeled channel, so the
  // clairvoyant detector has no role here.
  auto dets = build_detectors(cfg, sys, specs, sys.pe, false);
  const int num_dets = static_cast<int>(dets.size());
  const int num_pts = static_cast<int>(cfg.sweep_values.size());

  // Per assumed value, rebuild only the fusion tables; quantizers and the
  // physical channel stay fixed, so one trial set serves every column.
  std::vector<std::vector<DetectorTables>> assumed_tables(num_pts);
  std::vector<std::vector<char>> assumed_degenerate(num_pts);
  for (int s = 0; s < num_pts; ++s) {
    std::vector<double> assumed(sys.num_sensors, cfg.sweep_values[s]);
    assumed_tables[s].reserve(num_dets);
    assumed_degenerate[s].resize(num_dets);
    for (int d = 0; d < num_dets; ++d) {
      assumed_tables[s].push_back(build_tables(sys, dets[d].spec, assumed));
      assumed_degenerate[s][d] = assumed_tables[s][d].degenerate ? 1 : 0;
    }
  }

  // Calibrate each (assumed, detector) threshold so the realized false-alarm
  // rate stays at cfg.pfa; the pd column then shows the pure weighting loss.
  std::vector<MismatchPrediction> preds(static_cast<std::size_t>(num_pts) * num_dets);
  std::vector<double> etas(static_cast<std::size_t>(num_pts) * num_dets, 0.0);
  for (int s = 0; s < num_pts; ++s) {
    std::vector<double> assumed(sys.num_sensors, cfg.sweep_values[s]);
    for (int d = 0; d < num_dets; ++d) {
      if (assumed_degenerate[s][d]) continue;
      std::size_t k = static_cast<std::size_t>(s) * num_dets + d;
      preds[k] = mismatched_asymptotics(sys, dets[d].spec, sys.pe, assumed, sys.sparsity, cfg.pfa);
      etas[k] = preds[k].threshold_true;
    }
  }

  auto h = make_h(cfg, sys, 0);
  int workers = effective_workers(cfg.threads, cfg.trials);
  std::vector<std::vector<std::int64_t>> counts(
      workers,
      std::vector<std::int64_t>(static_cast<std::size_t>(num_pts) * num_dets * 2, 0));
  parallel_trials(cfg.trials, workers, [&](int w, int begin, int end) {
    std::vector<double> y;
    std::vector<int> active;
    std::vector<std::vector<int>> received(num_dets);
    for (int t = begin; t < end; ++t) {
      for (int hyp = 0; hyp < 2; ++hyp) {
        Stream trial(cfg.seed, {kTagTrial, 0, static_cast<std::uint64_t>(hyp),
                                static_cast<std::uint64_t>(t)});
        gen_measurements(sys, cfg.mode, hyp, h, trial, y, active);
        for (int d = 0; d < num_dets; ++d)
          send_reports(dets[d].spec, sys, y, trial, d, received[d]);
        for (int s = 0; s < num_pts; ++s)
          for (int d = 0; d < num_dets; ++d) {
            if (assumed_degenerate[s][d]) continue;
            std::size_t k = static_cast<std::size_t>(s) * num_dets + d;
            double stat = lmpt_statistic(assumed_tables[s][d], received[d]);
            if (stat > etas[k])
              ++counts[w][k * 2 + hyp];
          }
      }
    }
  });
  auto totals = reduce_counts(counts);

  ExperimentResult result;
  result.command = "mismatch";
  for (int s = 0; s < num_pts; ++s) {
    double assumed_pe = cfg.sweep_values[s];
    for (int d = 0; d < num_dets; ++d) {
      if (assumed_degenerate[s][d]) {
        result.rows.push_back(warning_row(assumed_pe, dets[d].label, cfg.trials));
        continue;
      }
      ResultRow row;
      row.sweep = assumed_pe;
      row.detector = dets[d].label;
      row.pfa_theory = cfg.pfa;
      row.pd_theory = preds[static_cast<std::size_t>(s) * num_dets + d].calibrated_pd;
      std::size_t base = (static_cast<std::size_t>(s) * num_dets + d) * 2;
      row.pfa_mc = static_cast<double>(totals[base + 0]) / cfg.trials;
      row.pd_mc = static_cast<double>(totals[base + 1]) / cfg.trials;
      row.ci = ci_half_width(row.pd_mc, cfg.trials);
      row.trials = cfg.trials;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::vector<DesignTableRow> run_design_table(const std::vector<std::string>& kinds,
                                             const std::vector<int>& qs,
                                             const std::vector<double>& pes, double sigma_w,
                                             std::uint64_t seed) {
  std::vector<DesignTableRow> rows;
  for (const auto& kind : kinds) {
    if (kind != "rq" && kind != "lq" && kind != "lqu")
      throw std::invalid_argument("design table: kind must be rq, lq, or lqu");
    for (int q : qs)
      for (double pe : pes) {
        DesignTableRow row;
        row.kind = kind;
        row.q = q;
        row.pe = pe;
        if (kind == "lqu") {
          row.result = lqu_design(q, pe, sigma_w);
        } else {
          PsoParams params;
          params.seed = seed;
          row.result = pso_optimize(kind == "rq" ? QuantKind::RQ : QuantKind::LQ, q, pe, sigma_w,
                                    params);
        }
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

std::string render_csv(const ExperimentResult& result) {
  std::string out = "sweep,detector,pfa_theory,pd_theory,pfa_mc,pd_mc,ci,trials\n";
  for (const auto& row : result.rows) append_row(out, row);
  return out;
}

std::string render_design_csv(const std::vector<DesignTableRow>& rows) {
  std::string out = "kind,q,pe,are,normalized_fi,thresholds\n";
  char buf[64];
  for (const auto& row : rows) {
    out += row.kind;
    std::snprintf(buf, sizeof buf, ",%d,%g,%.6f,%.6f,", row.q, row.pe, row.result.are,
                  row.result.normalized_fi);
    out += buf;
    for (std::size_t i = 0; i < row.result.spec.thresholds.size(); ++i) {
      if (i) out += ';';
      std::snprintf(buf, sizeof buf, "%.9g", row.result.spec.thresholds[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string render_manifest(const std::string& command, std::uint64_t config_hash,
                            std::uint64_t seed, int trials, const std::string& mode,
                            std::size_t rows) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"command\":\"%s\",\"config_hash\":\"fnv1a64:%016llx\",\"mode\":\"%s\","
                "\"rows\":%zu,\"seed\":%llu,\"tool\":\"quantdet\",\"trials\":%d,"
                "\"version\":\"%s\"}\n",
                command.c_str(), static_cast<unsigned long long>(config_hash), mode.c_str(), rows,
                static_cast<unsigned long long>(seed), trials, kVersion);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace quantdet
