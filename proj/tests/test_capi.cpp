// SPDX-License-Identifier: Apache-2.0
//
// C interface: lifecycle, error codes, and the string-returning entry points.
#include <cstring>
#include <string>

#include "doctest.h"
#include "quantdet.h"

namespace {

const char* kRocConfig = R"({
  "system": {"M": 30, "N": 200, "p": 0.03, "sigma0_sq": 4, "sigma_w_sq": 1,
             "pe": 0.05, "h_norm_sq": 1},
  "quantizers": [{"label": "1b-LQ", "kind": "lq", "q": 1, "thresholds": [1.5]}],
  "detectors": ["LQ-LMPT", "clairvoyant"],
  "trials": 400, "seed": 7, "mode": "gaussian-approx",
  "sweep": {"axis": "pfa", "values": [0.1, 0.3]}
})";

std::string take(char* s) {
  std::string out = s ? s : "";
  qd_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("version and error-state plumbing") {
  CHECK(std::string(qd_version()) == "1.0.0");
  CHECK(qd_experiment_create(nullptr, nullptr) == QD_ERR_INVALID_ARG);
  CHECK(std::string(qd_last_error()).size() > 0);
}

TEST_CASE("experiment lifecycle over the C boundary") {
  qd_experiment* exp = nullptr;
  REQUIRE(qd_experiment_create(kRocConfig, &exp) == QD_OK);
  CHECK(qd_experiment_set_trials(exp, 300) == QD_OK);
  CHECK(qd_experiment_set_seed(exp, 11) == QD_OK);
  CHECK(qd_experiment_set_threads(exp, 2) == QD_OK);

  qd_result* res = nullptr;
  REQUIRE(qd_experiment_run(exp, "roc", &res) == QD_OK);

  char* csv = nullptr;
  REQUIRE(qd_result_csv(res, &csv) == QD_OK);
  std::string text = take(csv);
  CHECK(text.rfind("sweep,detector,pfa_theory,pd_theory,pfa_mc,pd_mc,ci,trials\n", 0) == 0);
  CHECK(text.find("1b-LQ") != std::string::npos);
  CHECK(text.find("clairvoyant") != std::string::npos);

  char* manifest = nullptr;
  REQUIRE(qd_result_manifest(res, &manifest) == QD_OK);
  std::string m = take(manifest);
  CHECK(m.find("\"command\":\"roc\"") != std::string::npos);
  CHECK(m.find("\"seed\":11") != std::string::npos);
  CHECK(m.find("\"trials\":300") != std::string::npos);

  int dead = -1;
  CHECK(qd_result_degenerate_count(res, &dead) == QD_OK);
  CHECK(dead == 0);

  qd_result_destroy(res);
  qd_experiment_destroy(exp);
}

TEST_CASE("identical runs produce identical text") {
  auto run_once = [&]() {
    qd_experiment* exp = nullptr;
    REQUIRE(qd_experiment_create(kRocConfig, &exp) == QD_OK);
    qd_result* res = nullptr;
    REQUIRE(qd_experiment_run(exp, "roc", &res) == QD_OK);
    char* csv = nullptr;
    REQUIRE(qd_result_csv(res, &csv) == QD_OK);
    std::string text = take(csv);
    qd_result_destroy(res);
    qd_experiment_destroy(exp);
    return text;
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("bad configs and commands surface as status codes") {
  qd_experiment* exp = nullptr;
  CHECK(qd_experiment_create("{ not json", &exp) == QD_ERR_VALIDATION);
  CHECK(qd_experiment_create("{}", &exp) == QD_ERR_VALIDATION);

  REQUIRE(qd_experiment_create(kRocConfig, &exp) == QD_OK);
  qd_result* res = nullptr;
  CHECK(qd_experiment_run(exp, "warp", &res) == QD_ERR_INVALID_ARG);
  CHECK(qd_experiment_run(exp, "mismatch", &res) == QD_ERR_VALIDATION);  // axis mismatch
  CHECK(qd_experiment_set_trials(exp, 0) == QD_ERR_VALIDATION);
  CHECK(qd_experiment_set_threads(exp, 0) == QD_ERR_VALIDATION);
  qd_experiment_destroy(exp);
}

TEST_CASE("a run whose only detector is dead reports the degenerate code") {
  const char* dead_config = R"({
    "system": {"M": 10, "N": 100, "p": 0.03, "sigma0_sq": 4, "sigma_w_sq": 1,
               "pe": 0.0, "h_norm_sq": 1},
    "quantizers": [{"label": "dead", "kind": "rq", "q": 1, "thresholds": [0.0]}],
    "detectors": ["RQ-LMPT"],
    "trials": 100, "seed": 1, "mode": "gaussian-approx",
    "sweep": {"axis": "pfa", "values": [0.1]}
  })";
  qd_experiment* exp = nullptr;
  REQUIRE(qd_experiment_create(dead_config, &exp) == QD_OK);
  qd_result* res = nullptr;
  CHECK(qd_experiment_run(exp, "roc", &res) == QD_ERR_DEGENERATE);
  qd_experiment_destroy(exp);
}

TEST_CASE("threshold design through the C interface") {
  char* json = nullptr;
  REQUIRE(qd_design("lq", 1, 0.0, 12345, &json) == QD_OK);
  std::string text = take(json);
  CHECK(text.find("\"kind\": \"lq\"") != std::string::npos);
  CHECK(text.find("\"are\"") != std::string::npos);

  CHECK(qd_design("volume", 1, 0.0, 12345, &json) == QD_ERR_VALIDATION);
  CHECK(qd_design("lq", 1, 1.5, 12345, &json) == QD_ERR_VALIDATION);
  CHECK(qd_design("lq", 1, 0.0, 12345, nullptr) == QD_ERR_INVALID_ARG);
}

TEST_CASE("design table and threshold trace emit csv") {
  char* csv = nullptr;
  REQUIRE(qd_design_table("lq,lqu", "1", "0,0.1", 12345, &csv) == QD_OK);
  std::string table = take(csv);
  CHECK(table.rfind("kind,q,pe,are,normalized_fi,thresholds\n", 0) == 0);
  CHECK(table.find("lqu,1,0.1,") != std::string::npos);

  REQUIRE(qd_threshold_sweep("lq", 0.0, 0.5, 2.5, 0.1, &csv) == QD_OK);
  std::string trace = take(csv);
  CHECK(trace.rfind("tau,normalized_fi\n", 0) == 0);
  CHECK(qd_threshold_sweep("lq", 0.0, 2.5, 0.5, 0.1, &csv) == QD_ERR_VALIDATION);
}

TEST_CASE("information report for an explicit scenario") {
  const char* request = R"({
    "kind": "lq", "q": 1, "thresholds": [1.5], "pe": 0.0, "p": 0.03,
    "sigma0_sq": 4, "sigma_w_sq": 1, "M": 300, "h_norm_sq": 1
  })";
  char* json = nullptr;
  REQUIRE(qd_fisher(request, &json) == QD_OK);
  std::string text = take(json);
  CHECK(text.find("\"fi0\"") != std::string::npos);
  CHECK(text.find("\"snr_db\"") != std::string::npos);
  CHECK(text.find("\"are\"") != std::string::npos);
  CHECK(qd_fisher("{}", &json) == QD_ERR_VALIDATION);
}

TEST_CASE("standalone validation verdicts") {
  CHECK(qd_validate(kRocConfig) == QD_OK);
  CHECK(qd_validate("{\"system\":{}}") == QD_ERR_VALIDATION);
  CHECK(qd_validate(nullptr) == QD_ERR_INVALID_ARG);
}

TEST_SUITE_END();
