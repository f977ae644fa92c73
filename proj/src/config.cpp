// SPDX-License-Identifier: Apache-2.0
#include "quantdet/config.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace quantdet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

const json& require(const json& node, const char* key, const char* where) {
  auto it = node.find(key);
  if (it == node.end()) fail(std::string(where) + " is missing field '" + key + "'");
  return *it;
}

double number(const json& node, const char* what) {
  if (!node.is_number()) fail(std::string(what) + " must be a number");
  return node.get<double>();
}

int integer(const json& node, const char* what) {
  if (!node.is_number_integer()) fail(std::string(what) + " must be an integer");
  return node.get<int>();
}

std::string text(const json& node, const char* what) {
  if (!node.is_string()) fail(std::string(what) + " must be a string");
  return node.get<std::string>();
}

std::uint64_t u64(const json& node, const char* what) {
  if (node.is_number_unsigned()) return node.get<std::uint64_t>();
  if (node.is_number_integer() && node.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(node.get<std::int64_t>());
  fail(std::string(what) + " must be a non-negative integer");
}

// Scalar broadcast to M entries, or an explicit array of length M.
std::vector<double> per_sensor(const json& node, int num_sensors, const char* what) {
  std::vector<double> out;
  if (node.is_number()) {
    out.assign(num_sensors, node.get<double>());
    return out;
  }
  if (!node.is_array()) fail(std::string(what) + " must be a number or an array");
  if (static_cast<int>(node.size()) != num_sensors)
    fail(std::string(what) + " array length must equal M");
  for (const auto& v : node) out.push_back(number(v, what));
  return out;
}

QuantKind parse_kind(const std::string& s, const char* where) {
  if (s == "rq") return QuantKind::RQ;
  if (s == "lq") return QuantKind::LQ;
  fail(std::string(where) + " kind must be 'rq' or 'lq'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) fail("document is not valid JSON");
  if (!doc.is_object()) fail("document must be a JSON object");

  ExperimentConfig cfg;

  const json& sys = require(doc, "system", "config");
  cfg.system.num_sensors = integer(require(sys, "M", "system"), "system.M");
  cfg.system.signal_dim = integer(require(sys, "N", "system"), "system.N");
  cfg.system.sparsity = number(require(sys, "p", "system"), "system.p");
  cfg.system.signal_var = number(require(sys, "sigma0_sq", "system"), "system.sigma0_sq");
  cfg.system.noise_var = number(require(sys, "sigma_w_sq", "system"), "system.sigma_w_sq");
  if (cfg.system.num_sensors < 1) fail("system.M must be >= 1");
  cfg.system.pe = per_sensor(require(sys, "pe", "system"), cfg.system.num_sensors, "system.pe");
  cfg.system.h_norm_sq =
      per_sensor(require(sys, "h_norm_sq", "system"), cfg.system.num_sensors, "system.h_norm_sq");

  const json& quants = require(doc, "quantizers", "config");
  if (!quants.is_array()) fail("quantizers must be an array");
  for (const auto& node : quants) {
    if (!node.is_object()) fail("quantizer entries must be objects");
    QuantizerRequest req;
    req.label = text(require(node, "label", "quantizer"), "quantizer.label");
    req.kind = parse_kind(text(require(node, "kind", "quantizer"), "quantizer"), "quantizer");
    req.q = integer(require(node, "q", "quantizer"), "quantizer.q");
    bool has_thresholds = node.contains("thresholds");
    bool has_design = node.contains("design");
    if (has_thresholds == has_design)
      fail("quantizer '" + req.label + "' needs exactly one of 'thresholds' or 'design'");
    if (has_thresholds) {
      const json& taus = node["thresholds"];
      if (!taus.is_array()) fail("quantizer.thresholds must be an array");
      for (const auto& v : taus) req.thresholds.push_back(number(v, "quantizer.thresholds"));
    } else {
      const json& design = node["design"];
      if (!design.is_object()) fail("quantizer.design must be an object");
      req.design = true;
      req.design_pe = number(require(design, "pe", "quantizer.design"), "quantizer.design.pe");
      if (design.contains("seed")) req.design_seed = u64(design["seed"], "quantizer.design.seed");
    }
    cfg.quantizers.push_back(std::move(req));
  }

  const json& dets = require(doc, "detectors", "config");
  if (!dets.is_array()) fail("detectors must be an array");
  cfg.fuse_rq = cfg.fuse_lq = cfg.fuse_clairvoyant = false;
  for (const auto& node : dets) {
    std::string name = text(node, "detectors entry");
    if (name == "RQ-LMPT")
      cfg.fuse_rq = true;
    else if (name == "LQ-LMPT")
      cfg.fuse_lq = true;
    else if (name == "clairvoyant")
      cfg.fuse_clairvoyant = true;
    else
      fail("unknown detector '" + name + "'");
  }

  cfg.trials = integer(require(doc, "trials", "config"), "trials");
  cfg.seed = u64(require(doc, "seed", "config"), "seed");

  std::string mode = text(require(doc, "mode", "config"), "mode");
  if (mode == "exact")
    cfg.mode = GenerationMode::Exact;
  else if (mode == "gaussian-approx")
    cfg.mode = GenerationMode::GaussianApprox;
  else
    fail("mode must be 'exact' or 'gaussian-approx'");

  const json& sweep = require(doc, "sweep", "config");
  std::string axis = text(require(sweep, "axis", "sweep"), "sweep.axis");
  if (axis == "pfa")
    cfg.axis = SweepAxis::Pfa;
  else if (axis == "sensors")
    cfg.axis = SweepAxis::Sensors;
  else if (axis == "snr_db")
    cfg.axis = SweepAxis::SnrDb;
  else if (axis == "assumed_pe")
    cfg.axis = SweepAxis::AssumedPe;
  else
    fail("sweep.axis must be pfa, sensors, snr_db, or assumed_pe");
  const json& values = require(sweep, "values", "sweep");
  if (!values.is_array()) fail("sweep.values must be an array");
  for (const auto& v : values) cfg.sweep_values.push_back(number(v, "sweep.values"));

  if (doc.contains("pfa")) cfg.pfa = number(doc["pfa"], "pfa");

  cfg.validate();
  return cfg;
}

std::string design_result_to_json(const DesignResult& result) {
  json doc;
  doc["kind"] = result.spec.kind == QuantKind::RQ ? "rq" : "lq";
  doc["q"] = result.spec.q;
  doc["thresholds"] = result.spec.thresholds;
  doc["objective"] = result.objective;
  doc["normalized_fi"] = result.normalized_fi;
  doc["are"] = result.are;
  return doc.dump(2) + "\n";
}

}  // namespace quantdet
