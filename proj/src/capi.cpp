// SPDX-License-Identifier: Apache-2.0
#include "quantdet.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "quantdet/config.hpp"
#include "quantdet/detector.hpp"
#include "quantdet/experiment.hpp"
#include "quantdet/gauss.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs fn, translating exceptions to status codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QD_ERR_VALIDATION;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return QD_ERR_DEGENERATE;
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return QD_ERR_VALIDATION;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QD_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* mem = static_cast<char*>(std::malloc(s.size() + 1));
  if (!mem) return nullptr;
  std::memcpy(mem, s.c_str(), s.size() + 1);
  return mem;
}

int emit(const std::string& s, char** out) {
  *out = copy_out(s);
  if (!*out) {
    set_error("out of memory");
    return QD_ERR_INTERNAL;
  }
  return QD_OK;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = csv.substr(start, comma - start);
    if (!item.empty()) items.push_back(item);
    start = comma + 1;
  }
  return items;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": '" + s + "' is not a number");
  }
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": '" + s + "' is not an integer");
  }
}

}  // namespace

struct qd_experiment {
  quantdet::ExperimentConfig cfg;
  std::string config_text;
};

struct qd_result {
  std::string csv;
  std::string manifest;
  int degenerate_count = 0;
};

extern "C" {

const char* qd_version(void) { return quantdet::kVersion; }

const char* qd_last_error(void) { return g_last_error.c_str(); }

void qd_string_free(char* s) { std::free(s); }

int qd_experiment_create(const char* config_json, qd_experiment** out) {
  if (!config_json || !out) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = new qd_experiment{quantdet::parse_experiment_config(config_json), config_json};
    *out = handle;
    return QD_OK;
  });
}

int qd_experiment_set_threads(qd_experiment* exp, int threads) {
  if (!exp) {
    set_error("null experiment handle");
    return QD_ERR_INVALID_ARG;
  }
  if (threads < 1) {
    set_error("threads must be >= 1");
    return QD_ERR_VALIDATION;
  }
  exp->cfg.threads = threads;
  return QD_OK;
}

int qd_experiment_set_trials(qd_experiment* exp, int trials) {
  if (!exp) {
    set_error("null experiment handle");
    return QD_ERR_INVALID_ARG;
  }
  if (trials < 1) {
    set_error("trials must be >= 1");
    return QD_ERR_VALIDATION;
  }
  exp->cfg.trials = trials;
  return QD_OK;
}

int qd_experiment_set_seed(qd_experiment* exp, unsigned long long seed) {
  if (!exp) {
    set_error("null experiment handle");
    return QD_ERR_INVALID_ARG;
  }
  exp->cfg.seed = seed;
  return QD_OK;
}

int qd_experiment_run(qd_experiment* exp, const char* command, qd_result** out) {
  if (!exp || !command || !out) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out = nullptr;
  std::string cmd = command;
  return guarded([&] {
    quantdet::ExperimentResult result;
    if (cmd == "roc")
      result = quantdet::run_roc(exp->cfg);
    else if (cmd == "pd-vs-m")
      result = quantdet::run_pd_vs_sensors(exp->cfg);
    else if (cmd == "pd-vs-snr")
      result = quantdet::run_pd_vs_snr(exp->cfg);
    else if (cmd == "mismatch")
      result = quantdet::run_mismatch(exp->cfg);
    else {
      set_error("unknown command '" + cmd + "'");
      return QD_ERR_INVALID_ARG;
    }
    std::set<std::string> skipped;
    for (const auto& row : result.rows)
      if (row.degenerate) skipped.insert(row.detector);
    auto res = new qd_result;
    res->csv = quantdet::render_csv(result);
    res->manifest = quantdet::render_manifest(
        result.command, quantdet::fnv1a64(exp->config_text), exp->cfg.seed, exp->cfg.trials,
        exp->cfg.mode == quantdet::GenerationMode::Exact ? "exact" : "gaussian-approx",
        result.rows.size());
    res->degenerate_count = static_cast<int>(skipped.size());
    *out = res;
    return QD_OK;
  });
}

void qd_experiment_destroy(qd_experiment* exp) { delete exp; }

int qd_result_csv(const qd_result* res, char** out_text) {
  if (!res || !out_text) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  return emit(res->csv, out_text);
}

int qd_result_manifest(const qd_result* res, char** out_text) {
  if (!res || !out_text) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  return emit(res->manifest, out_text);
}

int qd_result_degenerate_count(const qd_result* res, int* out_count) {
  if (!res || !out_count) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out_count = res->degenerate_count;
  return QD_OK;
}

void qd_result_destroy(qd_result* res) { delete res; }

int qd_design(const char* kind, int q, double pe, unsigned long long seed, char** out_json) {
  if (!kind || !out_json) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out_json = nullptr;
  std::string kind_str = kind;
  return guarded([&] {
    quantdet::DesignResult result;
    if (kind_str == "lqu") {
      result = quantdet::lqu_design(q, pe, 1.0);
    } else if (kind_str == "rq" || kind_str == "lq") {
      quantdet::PsoParams params;
      params.seed = seed;
      result = quantdet::pso_optimize(
          kind_str == "rq" ? quantdet::QuantKind::RQ : quantdet::QuantKind::LQ, q, pe, 1.0,
          params);
    } else {
      set_error("kind must be rq, lq, or lqu");
      return QD_ERR_VALIDATION;
    }
    return emit(quantdet::design_result_to_json(result), out_json);
  });
}

int qd_design_table(const char* kinds, const char* qs, const char* pes, unsigned long long seed,
                    char** out_csv) {
  if (!kinds || !qs || !pes || !out_csv) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out_csv = nullptr;
  return guarded([&] {
    std::vector<std::string> kind_list = split_list(kinds);
    std::vector<int> q_list;
    for (const auto& s : split_list(qs)) q_list.push_back(parse_int(s, "q list"));
    std::vector<double> pe_list;
    for (const auto& s : split_list(pes)) pe_list.push_back(parse_double(s, "pe list"));
    if (kind_list.empty() || q_list.empty() || pe_list.empty())
      throw std::invalid_argument("design table: kinds, qs, and pes must be non-empty");
    auto rows = quantdet::run_design_table(kind_list, q_list, pe_list, 1.0, seed);
    return emit(quantdet::render_design_csv(rows), out_csv);
  });
}

int qd_threshold_sweep(const char* kind, double pe, double grid_low, double grid_high, double step,
                       char** out_csv) {
  if (!kind || !out_csv) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out_csv = nullptr;
  std::string kind_str = kind;
  return guarded([&] {
    if (kind_str != "rq" && kind_str != "lq") {
      set_error("kind must be rq or lq");
      return QD_ERR_VALIDATION;
    }
    auto trace = quantdet::threshold_sweep_1b(
        kind_str == "rq" ? quantdet::QuantKind::RQ : quantdet::QuantKind::LQ, pe, grid_low,
        grid_high, step);
    std::string csv = "tau,normalized_fi\n";
    char buf[64];
    for (const auto& [tau, nfi] : trace) {
      std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", tau, nfi);
      csv += buf;
    }
    return emit(csv, out_csv);
  });
}

int qd_fisher(const char* request_json, char** out_json) {
  if (!request_json || !out_json) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  *out_json = nullptr;
  return guarded([&] {
    nlohmann::json req = nlohmann::json::parse(request_json, nullptr, false);
    if (req.is_discarded() || !req.is_object())
      throw std::invalid_argument("fisher: request is not a JSON object");

    auto get_or = [&](const char* key, double fallback) {
      return req.contains(key) ? req[key].get<double>() : fallback;
    };
    quantdet::SystemConfig sys;
    sys.num_sensors = req.contains("M") ? req["M"].get<int>() : 1;
    sys.signal_dim = 1;
    sys.sparsity = get_or("p", 0.0);
    sys.signal_var = get_or("sigma0_sq", 1.0);
    sys.noise_var = get_or("sigma_w_sq", 1.0);
    sys.h_norm_sq.assign(sys.num_sensors, get_or("h_norm_sq", 1.0));
    double pe = get_or("pe", 0.0);
    sys.pe.assign(sys.num_sensors, pe);
    sys.validate();

    if (!req.contains("kind") || !req["kind"].is_string())
      throw std::invalid_argument("fisher: 'kind' must be a string");
    std::string kind_str = req["kind"].get<std::string>();
    if (kind_str != "rq" && kind_str != "lq")
      throw std::invalid_argument("fisher: kind must be 'rq' or 'lq'");
    quantdet::QuantKind kind =
        kind_str == "rq" ? quantdet::QuantKind::RQ : quantdet::QuantKind::LQ;
    if (!req.contains("q")) throw std::invalid_argument("fisher: 'q' is required");
    int q = req["q"].get<int>();

    quantdet::QuantizerSpec spec;
    if (req.contains("thresholds")) {
      std::vector<double> taus = req["thresholds"].get<std::vector<double>>();
      spec = quantdet::build_quantizer(kind, q, std::move(taus));
    } else if (req.contains("design_pe")) {
      spec = quantdet::pso_optimize(kind, q, req["design_pe"].get<double>(),
                                    std::sqrt(sys.noise_var))
                 .spec;
    } else {
      throw std::invalid_argument("fisher: provide 'thresholds' or 'design_pe'");
    }

    double p = sys.sparsity;
    double fi0 = quantdet::fisher_information_quantized(sys, spec, sys.pe, 0.0);
    if (fi0 <= 0.0) throw std::domain_error("fisher: quantizer carries no information");
    double fi_at_p = quantdet::fisher_information_quantized(sys, spec, sys.pe, p);
    double fi_clair = quantdet::fisher_information_clairvoyant(sys, 0.0);

    nlohmann::json out;
    out["fi0"] = fi0;
    out["fi_at_p"] = fi_at_p;
    out["fi_clairvoyant"] = fi_clair;
    out["normalized_fi"] = fi0 / fi_clair;
    out["are"] = fi_clair / fi0;
    out["snr_db"] = quantdet::snr_db(sys.sparsity, sys.signal_var, sys.noise_var);
    return emit(out.dump(2) + "\n", out_json);
  });
}

int qd_validate(const char* config_json) {
  if (!config_json) {
    set_error("null argument");
    return QD_ERR_INVALID_ARG;
  }
  return guarded([&] {
    quantdet::parse_experiment_config(config_json);
    return QD_OK;
  });
}

}  // extern "C"
