// SPDX-License-Identifier: Apache-2.0
//
// JSON config parsing: schema acceptance, scalar broadcast, field-naming
// errors, and design-result serialization.
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "quantdet/config.hpp"

using namespace quantdet;

namespace {

const char* kBaseConfig = R"({
  "system": {"M": 30, "N": 200, "p": 0.03, "sigma0_sq": 4, "sigma_w_sq": 1,
             "pe": 0.01, "h_norm_sq": 1},
  "quantizers": [
    {"label": "1b-LQ", "kind": "lq", "q": 1, "thresholds": [1.5]},
    {"label": "3b-RQ", "kind": "rq", "q": 3, "design": {"pe": 0.01}}
  ],
  "detectors": ["RQ-LMPT", "LQ-LMPT", "clairvoyant"],
  "trials": 500, "seed": 42, "mode": "exact",
  "sweep": {"axis": "pfa", "values": [0.05, 0.1]},
  "pfa": 0.1
})";

nlohmann::json base() { return nlohmann::json::parse(kBaseConfig); }

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("well-formed document parses into a validated config") {
  ExperimentConfig cfg = parse_experiment_config(kBaseConfig);
  CHECK(cfg.system.num_sensors == 30);
  CHECK(cfg.system.signal_dim == 200);
  CHECK(cfg.system.sparsity == doctest::Approx(0.03));
  REQUIRE(cfg.system.pe.size() == 30);    // scalar broadcast
  CHECK(cfg.system.pe[17] == doctest::Approx(0.01));
  REQUIRE(cfg.quantizers.size() == 2);
  CHECK(cfg.quantizers[0].label == "1b-LQ");
  CHECK(cfg.quantizers[0].kind == QuantKind::LQ);
  CHECK_FALSE(cfg.quantizers[0].design);
  CHECK(cfg.quantizers[1].design);
  CHECK(cfg.quantizers[1].design_pe == doctest::Approx(0.01));
  CHECK(cfg.fuse_rq);
  CHECK(cfg.fuse_lq);
  CHECK(cfg.fuse_clairvoyant);
  CHECK(cfg.trials == 500);
  CHECK(cfg.seed == 42);
  CHECK(cfg.mode == GenerationMode::Exact);
  CHECK(cfg.axis == SweepAxis::Pfa);
  REQUIRE(cfg.sweep_values.size() == 2);
  CHECK(cfg.pfa == doctest::Approx(0.1));
}

TEST_CASE("per-sensor arrays are accepted at full length") {
  nlohmann::json doc = base();
  doc["system"]["M"] = 3;
  doc["system"]["pe"] = {0.0, 0.1, 0.2};
  doc["system"]["h_norm_sq"] = {1.0, 1.5, 0.5};
  ExperimentConfig cfg = parse_experiment_config(doc.dump());
  REQUIRE(cfg.system.pe.size() == 3);
  CHECK(cfg.system.pe[2] == doctest::Approx(0.2));
  CHECK(cfg.system.h_norm_sq[1] == doctest::Approx(1.5));
}

TEST_CASE("wrong-length per-sensor array is rejected") {
  nlohmann::json doc = base();
  doc["system"]["pe"] = {0.0, 0.1};
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);
}

TEST_CASE("malformed text and wrong shapes are rejected") {
  CHECK_THROWS_AS(parse_experiment_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_config("[1,2,3]"), std::invalid_argument);

  nlohmann::json doc = base();
  doc.erase("system");
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["detectors"] = {"RQ-LMPT", "mystery"};
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["mode"] = "approximate";
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["sweep"]["axis"] = "voltage";
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["seed"] = -5;
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["trials"] = 0;
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);

  doc = base();
  doc["quantizers"][0].erase("thresholds");
  CHECK_THROWS_AS(parse_experiment_config(doc.dump()), std::invalid_argument);
}

TEST_CASE("detector list controls which fusions run") {
  nlohmann::json doc = base();
  doc["detectors"] = {"LQ-LMPT"};
  ExperimentConfig cfg = parse_experiment_config(doc.dump());
  CHECK_FALSE(cfg.fuse_rq);
  CHECK(cfg.fuse_lq);
  CHECK_FALSE(cfg.fuse_clairvoyant);
}

TEST_CASE("operating-point default applies when the field is absent") {
  nlohmann::json doc = base();
  doc.erase("pfa");
  ExperimentConfig cfg = parse_experiment_config(doc.dump());
  CHECK(cfg.pfa == doctest::Approx(0.1));
}

TEST_CASE("axis names map to sweep kinds") {
  nlohmann::json doc = base();
  doc["sweep"] = {{"axis", "sensors"}, {"values", {50, 100}}};
  CHECK(parse_experiment_config(doc.dump()).axis == SweepAxis::Sensors);
  doc["sweep"] = {{"axis", "snr_db"}, {"values", {-8, -4}}};
  CHECK(parse_experiment_config(doc.dump()).axis == SweepAxis::SnrDb);
  doc["sweep"] = {{"axis", "assumed_pe"}, {"values", {0.0, 0.1}}};
  CHECK(parse_experiment_config(doc.dump()).axis == SweepAxis::AssumedPe);
}

TEST_CASE("design results serialize with their efficiency numbers") {
  DesignResult result;
  result.spec = build_quantizer(QuantKind::LQ, 1, {1.5});
  result.objective = 0.65;
  result.normalized_fi = 0.65;
  result.are = 1.0 / 0.65;
  std::string text = design_result_to_json(result);
  nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["kind"] == "lq");
  CHECK(doc["q"] == 1);
  REQUIRE(doc["thresholds"].size() == 1);
  CHECK(doc["thresholds"][0].get<double>() == doctest::Approx(1.5));
  CHECK(doc["normalized_fi"].get<double>() == doctest::Approx(0.65));
  CHECK(doc["are"].get<double>() == doctest::Approx(1.0 / 0.65));
}

TEST_SUITE_END();
