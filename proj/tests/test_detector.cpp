// SPDX-License-Identifier: Apache-2.0
//
// Fusion tables and statistics: frozen per-interval values, exact
// finite-alphabet identities (zero-mean weights, score variance = Fisher
// information, score = derivative of the log-likelihood), operating points,
// and the mismatched-channel analytics.
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "quantdet/detector.hpp"
#include "quantdet/gauss.hpp"

using namespace quantdet;

namespace {

SystemConfig homogeneous(int m, double signal_var, double pe_val) {
  SystemConfig cfg;
  cfg.num_sensors = m;
  cfg.signal_dim = 1000;
  cfg.sparsity = 0.03;
  cfg.signal_var = signal_var;
  cfg.noise_var = 1.0;
  cfg.h_norm_sq.assign(m, 1.0);
  cfg.pe.assign(m, pe_val);
  return cfg;
}

// Visits every received-index combination for an M-sensor system.
template <typename F>
void for_each_combo(int sensors, int symbols, F&& fn) {
  std::vector<int> received(sensors, 1);
  while (true) {
    fn(received);
    int k = 0;
    while (k < sensors && ++received[k] > symbols) received[k++] = 1;
    if (k == sensors) break;
  }
}

}  // namespace

TEST_SUITE_BEGIN("detector");

TEST_CASE("interval masses of the unit-threshold magnitude quantizer") {
  std::vector<double> tau = {1.0};
  CHECK(interval_prob(QuantKind::LQ, tau, 1, 1.0) ==
        doctest::Approx(0.34134474606854293).epsilon(1e-12));
  CHECK(interval_prob(QuantKind::LQ, tau, 2, 1.0) ==
        doctest::Approx(0.15865525393145707).epsilon(1e-12));
  // Magnitude-axis masses describe the half line.
  CHECK(interval_prob(QuantKind::LQ, tau, 1, 1.0) + interval_prob(QuantKind::LQ, tau, 2, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("raw-axis masses partition the real line") {
  std::vector<double> tau = {-1.0, 0.2, 1.3};
  double total = 0.0;
  for (int j = 1; j <= 4; ++j) total += interval_prob(QuantKind::RQ, tau, j, 1.7);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-interval sensitivities at the unit threshold") {
  std::vector<double> tau = {1.0};
  CHECK(f_term(QuantKind::LQ, tau, 1, 1.0) ==
        doctest::Approx(-0.24197072451914337).epsilon(1e-12));
  CHECK(f_term(QuantKind::LQ, tau, 2, 1.0) ==
        doctest::Approx(0.24197072451914337).epsilon(1e-12));
}

TEST_CASE("sensitivities telescope to zero") {
  std::vector<double> rq_tau = {-0.9, 0.0, 0.7};
  std::vector<double> lq_tau = {0.3, 1.1, 2.0};
  for (double sigma : {0.8, 1.0, 1.9}) {
    double rq_sum = 0.0, lq_sum = 0.0;
    for (int j = 1; j <= 4; ++j) {
      rq_sum += f_term(QuantKind::RQ, rq_tau, j, sigma);
      lq_sum += f_term(QuantKind::LQ, lq_tau, j, sigma);
    }
    CHECK(std::fabs(rq_sum) <= 1e-12);
    CHECK(std::fabs(lq_sum) <= 1e-12);
  }
}

TEST_CASE("noiseless-channel fusion weights are per-interval ratios") {
  SystemConfig cfg = homogeneous(1, 4.0, 0.0);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 1, {1.0});
  DetectorTables t = build_tables(cfg, spec, cfg.pe);
  REQUIRE(t.num_symbols == 2);
  REQUIRE_FALSE(t.degenerate);
  CHECK(t.weights[0] == doctest::Approx(-0.24197072 / 0.34134475).epsilon(1e-6));
  CHECK(t.weights[1] == doctest::Approx(0.24197072 / 0.15865525).epsilon(1e-6));
}

TEST_CASE("received-index masses form a distribution") {
  SystemConfig cfg = homogeneous(3, 4.0, 0.12);
  for (auto spec : {build_quantizer(QuantKind::LQ, 2, {0.4, 1.0, 1.8}),
                    build_quantizer(QuantKind::RQ, 2, {-1.0, 0.1, 1.2})}) {
    DetectorTables t = build_tables(cfg, spec, cfg.pe);
    for (int m = 0; m < cfg.num_sensors; ++m) {
      double total = 0.0;
      for (int i = 1; i <= t.num_symbols; ++i) {
        CHECK(t.h0_mass(m, i) >= 0.0);
        total += t.h0_mass(m, i);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("fusion weights have zero mean under the null") {
  std::vector<SystemConfig> scenarios;
  scenarios.push_back(homogeneous(4, 4.0, 0.0));
  scenarios.push_back(homogeneous(4, 4.0, 0.2));
  SystemConfig het = homogeneous(3, 8.0, 0.1);
  het.pe = {0.02, 0.1, 0.3};
  het.h_norm_sq = {0.7, 1.0, 1.4};
  scenarios.push_back(het);

  for (const auto& cfg : scenarios)
    for (auto spec : {build_quantizer(QuantKind::LQ, 2, {0.5, 1.1, 1.9}),
                      build_quantizer(QuantKind::RQ, 3,
                                      {-2.1, -1.3, -0.6, 0.0, 0.5, 1.2, 2.2})}) {
      DetectorTables t = build_tables(cfg, spec, cfg.pe);
      for (int m = 0; m < cfg.num_sensors; ++m) {
        double mean = 0.0;
        for (int i = 1; i <= t.num_symbols; ++i)
          mean += t.h0_mass(m, i) * t.weights[static_cast<std::size_t>(m) * t.num_symbols + i - 1];
        CHECK(std::fabs(mean) <= 1e-10);
      }
    }
}

TEST_CASE("statistic is standardized under the null") {
  SystemConfig cfg = homogeneous(5, 4.0, 0.08);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 2, {0.5, 1.1, 1.9});
  DetectorTables t = build_tables(cfg, spec, cfg.pe);
  // Independent sensors: moments of the sum follow from per-sensor moments.
  double mean = 0.0, var = 0.0;
  for (int m = 0; m < cfg.num_sensors; ++m) {
    double mu_m = 0.0, m2_m = 0.0;
    for (int i = 1; i <= t.num_symbols; ++i) {
      double w = t.weights[static_cast<std::size_t>(m) * t.num_symbols + i - 1];
      double contrib = 0.5 * cfg.signal_var * t.sensor_scale[m] * w / std::sqrt(t.fi0);
      mu_m += t.h0_mass(m, i) * contrib;
      m2_m += t.h0_mass(m, i) * contrib * contrib;
    }
    mean += mu_m;
    var += m2_m - mu_m * mu_m;
  }
  CHECK(std::fabs(mean) <= 1e-10);
  CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("exact enumeration ties scores, likelihoods, and information together") {
  SystemConfig cfg;
  cfg.num_sensors = 2;
  cfg.signal_dim = 500;
  cfg.sparsity = 0.04;
  cfg.signal_var = 4.0;
  cfg.noise_var = 1.0;
  cfg.h_norm_sq = {1.0, 1.3};
  cfg.pe = {0.05, 0.15};

  for (auto spec : {build_quantizer(QuantKind::RQ, 2, {-0.8, 0.1, 1.1}),
                    build_quantizer(QuantKind::LQ, 2, {0.6, 1.2, 1.9})}) {
    DetectorTables t = build_tables(cfg, spec, cfg.pe);
    REQUIRE_FALSE(t.degenerate);
    CHECK(t.fi0 ==
          doctest::Approx(fisher_information_quantized(cfg, spec, cfg.pe, 0.0)).epsilon(1e-12));

    for (double p : {0.0, 0.04}) {
      double total = 0.0, mean_score = 0.0, second_score = 0.0, mean_slope = 0.0;
      const double h = 1e-4;
      for_each_combo(cfg.num_sensors, t.num_symbols, [&](const std::vector<int>& received) {
        double prob = std::exp(log_likelihood(t, received, p));
        double sc = score(t, received, p);
        total += prob;
        mean_score += prob * sc;
        second_score += prob * sc * sc;

        // The score is the derivative of the log-likelihood in the sparsity.
        double fd = (log_likelihood(t, received, p + h) - log_likelihood(t, received, p - h)) /
                    (2.0 * h);
        CHECK(sc == doctest::Approx(fd).epsilon(1e-5));
        mean_slope += prob * (score(t, received, p + h) - score(t, received, p - h)) / (2.0 * h);

        if (p == 0.0)
          CHECK(sc == doctest::Approx(std::sqrt(t.fi0) * lmpt_statistic(t, received))
                          .epsilon(1e-10));
      });
      double fi = fisher_information_quantized(cfg, spec, cfg.pe, p);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::fabs(mean_score) <= 1e-10);
      CHECK(second_score == doctest::Approx(fi).epsilon(1e-10));
      CHECK(mean_slope == doctest::Approx(-fi).epsilon(1e-6));
    }
  }
}

TEST_CASE("quantization and bit flips never add information") {
  SystemConfig cfg = homogeneous(10, 4.0, 0.0);
  std::vector<QuantizerSpec> specs = {
      build_quantizer(QuantKind::RQ, 1, {0.6}),
      build_quantizer(QuantKind::RQ, 3, {-2.0, -1.2, -0.5, 0.0, 0.5, 1.2, 2.0}),
      build_quantizer(QuantKind::LQ, 1, {1.5}),
      build_quantizer(QuantKind::LQ, 3, {0.3, 0.6, 0.9, 1.3, 1.7, 2.2, 2.8}),
  };
  for (double pe_val : {0.0, 0.1, 0.3})
    for (double p : {0.0, 0.03}) {
      std::vector<double> pe(cfg.num_sensors, pe_val);
      double bound = fisher_information_clairvoyant(cfg, p);
      for (const auto& spec : specs) {
        double fi = fisher_information_quantized(cfg, spec, pe, p);
        CHECK(fi >= 0.0);
        CHECK(fi <= bound * (1.0 + 1e-12));
      }
    }
}

TEST_CASE("more channel noise means less information") {
  SystemConfig cfg = homogeneous(1, 4.0, 0.0);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 2, {0.5, 1.1, 1.9});
  double prev = fisher_information_quantized(cfg, spec, {0.0}, 0.0);
  for (double pe_val : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    double fi = fisher_information_quantized(cfg, spec, {pe_val}, 0.0);
    CHECK(fi < prev);
    prev = fi;
  }
}

TEST_CASE("unquantized information at the benchmark scenario") {
  SystemConfig cfg = homogeneous(300, 8.0, 0.1);
  CHECK(fisher_information_clairvoyant(cfg, 0.0) == doctest::Approx(9600.0).epsilon(1e-12));
  // At positive sparsity the per-sensor variance grows and information drops.
  double sigma_sq = 1.0 + 0.03 * 8.0;
  CHECK(fisher_information_clairvoyant(cfg, 0.03) ==
        doctest::Approx(9600.0 / (sigma_sq * sigma_sq)).epsilon(1e-12));
}

TEST_CASE("operating point links threshold, false alarms, and detections") {
  OperatingPoint op = operating_point(9600.0, 0.03, 0.1);
  CHECK(op.eta == doctest::Approx(1.2815515655446004).epsilon(1e-10));
  CHECK(op.lambda == doctest::Approx(2.9393876913398134).epsilon(1e-12));
  CHECK(op.pfa == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(op.pd == doctest::Approx(0.9513247262731048).epsilon(1e-8));

  OperatingPoint even = operating_point(100.0, 0.01, 0.5);
  CHECK(std::fabs(even.eta) <= 1e-10);
  CHECK(even.pd >= even.pfa);
}

TEST_CASE("degenerate quantizer is flagged and refuses to score") {
  // A sign threshold at zero: variance changes move no mass across it.
  SystemConfig cfg = homogeneous(2, 4.0, 0.0);
  QuantizerSpec spec = build_quantizer(QuantKind::RQ, 1, {0.0});
  DetectorTables t = build_tables(cfg, spec, cfg.pe);
  CHECK(t.degenerate);
  CHECK(t.fi0 == 0.0);
  std::vector<int> received = {1, 2};
  CHECK_THROWS_AS(lmpt_statistic(t, received), std::domain_error);
  CHECK(fisher_information_quantized(cfg, spec, cfg.pe, 0.0) == 0.0);
}

TEST_CASE("totally noisy channel makes every detector degenerate") {
  SystemConfig cfg = homogeneous(2, 4.0, 0.5);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 1, {1.0});
  DetectorTables t = build_tables(cfg, spec, cfg.pe);
  CHECK(t.degenerate);
}

TEST_CASE("unquantized statistic and score match their likelihood") {
  SystemConfig cfg = homogeneous(3, 4.0, 0.0);
  std::vector<double> y = {0.3, -1.4, 2.1};
  const double h = 1e-5;
  for (double p : {0.0, 0.03}) {
    double fd =
        (clairvoyant_log_likelihood(cfg, y, p + h) - clairvoyant_log_likelihood(cfg, y, p - h)) /
        (2.0 * h);
    CHECK(clairvoyant_score(cfg, y, p) == doctest::Approx(fd).epsilon(1e-5));
  }
  // Noise-level measurements carry no evidence either way.
  std::vector<double> flat = {1.0, 1.0, 1.0};
  CHECK(std::fabs(clairvoyant_statistic(cfg, flat)) <= 1e-12);
  CHECK(std::fabs(clairvoyant_score(cfg, flat, 0.0)) <= 1e-12);
}

TEST_CASE("matched channel assumption recovers the nominal operating point") {
  SystemConfig cfg = homogeneous(60, 8.0, 0.2);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 3, {0.3, 0.6, 0.9, 1.3, 1.7, 2.2, 2.8});
  MismatchPrediction match =
      mismatched_asymptotics(cfg, spec, cfg.pe, cfg.pe, cfg.sparsity, 0.1);
  CHECK(match.threshold_assumed == doctest::Approx(gaussian_ccdf_inv(0.1)).epsilon(1e-12));
  // Matched weights have exactly zero mean and unit variance under the null,
  // so both calibrations coincide.
  CHECK(match.threshold_true == doctest::Approx(match.threshold_assumed).epsilon(1e-10));
  CHECK(match.actual_pfa == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(match.calibrated_pd == doctest::Approx(match.actual_pd).epsilon(1e-9));
}

TEST_CASE("wrong channel assumption shifts the naive operating point") {
  SystemConfig cfg = homogeneous(60, 8.0, 0.2);
  QuantizerSpec spec = build_quantizer(QuantKind::LQ, 3, {0.3, 0.6, 0.9, 1.3, 1.7, 2.2, 2.8});
  std::vector<double> assumed(cfg.num_sensors, 0.0);
  MismatchPrediction wrong =
      mismatched_asymptotics(cfg, spec, cfg.pe, assumed, cfg.sparsity, 0.1);
  MismatchPrediction match =
      mismatched_asymptotics(cfg, spec, cfg.pe, cfg.pe, cfg.sparsity, 0.1);
  // Naive thresholding no longer meets the nominal false-alarm rate.
  CHECK(std::fabs(wrong.actual_pfa - 0.1) > 0.01);
  // Once both run at the same false-alarm rate, the matched weights win.
  CHECK(match.calibrated_pd >= wrong.calibrated_pd);
  // Degenerate assumed tables are rejected.
  std::vector<double> half(cfg.num_sensors, 0.5);
  CHECK_THROWS_AS(mismatched_asymptotics(cfg, spec, cfg.pe, half, cfg.sparsity, 0.1),
                  std::domain_error);
}

TEST_SUITE_END();
