// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library exclusively through the C API,
// reads JSON configs, and writes CSV plus a provenance manifest next to every
// file output. Exit codes: 0 success, 2 validation/usage error, 3 degenerate
// detector.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quantdet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;

int map_status(int qd_status) {
  if (qd_status == QD_OK) return kExitOk;
  if (qd_status == QD_ERR_DEGENERATE) return kExitDegenerate;
  return kExitValidation;
}

int fail_with(int qd_status) {
  std::fprintf(stderr, "error: %s\n", qd_last_error());
  return map_status(qd_status);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  return out.good();
}

// Writes to the path, or to stdout when path is "-".
int write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::fputs(content.c_str(), stdout);
    return kExitOk;
  }
  if (!write_file(path, content)) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    return kExitValidation;
  }
  return kExitOk;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Manifest for flag-driven commands (no config file). `request` is a
// canonical rendering of the effective arguments.
std::string flag_manifest(const std::string& command, const std::string& request,
                          unsigned long long seed) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"command\":\"%s\",\"config_hash\":\"fnv1a64:%016llx\",\"mode\":\"closed-form\","
                "\"rows\":0,\"seed\":%llu,\"tool\":\"quantdet\",\"trials\":0,"
                "\"version\":\"%s\"}\n",
                command.c_str(), static_cast<unsigned long long>(fnv1a64(request)), seed,
                qd_version());
  return buf;
}

int write_with_manifest(const std::string& out_path, const std::string& content,
                        const std::string& manifest) {
  int rc = write_output(out_path, content);
  if (rc != kExitOk || out_path == "-") return rc;
  if (!write_file(out_path + ".manifest.json", manifest)) {
    std::fprintf(stderr, "error: cannot write '%s.manifest.json'\n", out_path.c_str());
    return kExitValidation;
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string config_path;
  std::string out_path = "-";
  int trials = 0;  // 0: keep config value
  unsigned long long seed = 0;
  bool seed_set = false;
  int threads = 1;
};

void add_experiment_options(CLI::App* cmd, ExperimentArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config JSON file")->required();
  cmd->add_option("--out", args.out_path, "output CSV path, '-' for stdout");
  cmd->add_option("--trials", args.trials, "override the config's trial count");
  cmd->add_option("--seed", args.seed, "override the config's seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker threads (never changes results)");
}

int run_experiment_command(const std::string& command, const ExperimentArgs& args) {
  std::string config_text;
  if (!read_file(args.config_path, config_text)) {
    std::fprintf(stderr, "error: cannot read '%s'\n", args.config_path.c_str());
    return kExitValidation;
  }
  qd_experiment* exp = nullptr;
  int rc = qd_experiment_create(config_text.c_str(), &exp);
  if (rc != QD_OK) return fail_with(rc);

  if (args.trials > 0) rc = qd_experiment_set_trials(exp, args.trials);
  if (rc == QD_OK && args.seed_set) rc = qd_experiment_set_seed(exp, args.seed);
  if (rc == QD_OK) rc = qd_experiment_set_threads(exp, args.threads);
  if (rc != QD_OK) {
    qd_experiment_destroy(exp);
    return fail_with(rc);
  }

  qd_result* result = nullptr;
  rc = qd_experiment_run(exp, command.c_str(), &result);
  qd_experiment_destroy(exp);
  if (rc != QD_OK) return fail_with(rc);

  int skipped = 0;
  qd_result_degenerate_count(result, &skipped);
  if (skipped > 0)
    std::fprintf(stderr, "warning: %d detector(s) skipped as degenerate (NaN rows)\n", skipped);

  char* csv = nullptr;
  char* manifest = nullptr;
  rc = qd_result_csv(result, &csv);
  if (rc == QD_OK) rc = qd_result_manifest(result, &manifest);
  int exit_code;
  if (rc != QD_OK) {
    exit_code = fail_with(rc);
  } else {
    exit_code = write_with_manifest(args.out_path, csv, manifest);
  }
  qd_string_free(csv);
  qd_string_free(manifest);
  qd_result_destroy(result);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantized distributed detection: threshold design and Monte Carlo harness"};
  app.require_subcommand(1);

  // --- design ---------------------------------------------------------
  std::string design_kind = "lq";
  int design_q = 1;
  double design_pe = 0.0;
  unsigned long long design_seed = 12345;
  std::string design_out = "-";
  auto* design = app.add_subcommand("design", "optimize quantizer thresholds");
  design->add_option("--kind", design_kind, "rq | lq | lqu")->required();
  design->add_option("--q", design_q, "bits per sensor")->required();
  design->add_option("--pe", design_pe, "channel crossover probability");
  design->add_option("--seed", design_seed, "optimizer seed");
  design->add_option("--out", design_out, "output JSON path, '-' for stdout");

  // --- fisher ---------------------------------------------------------
  std::string fisher_request;
  std::string fisher_out = "-";
  auto* fisher = app.add_subcommand("fisher", "Fisher-information report for a scenario");
  fisher->add_option("--request", fisher_request, "request JSON (see quantdet.h)")->required();
  fisher->add_option("--out", fisher_out, "output JSON path, '-' for stdout");

  // --- are ------------------------------------------------------------
  std::string are_kinds = "rq,lq,lqu";
  std::string are_qs = "1,2,3";
  std::string are_pes = "0,0.01,0.1,0.2";
  unsigned long long are_seed = 12345;
  std::string are_out = "-";
  bool are_sweep = false;
  std::string sweep_kind = "lq";
  double sweep_pe = 0.0, sweep_lo = 0.01, sweep_hi = 4.0, sweep_step = 0.001;
  auto* are = app.add_subcommand("are", "efficiency table over (kind, q, pe) grids");
  are->add_option("--kinds", are_kinds, "comma list of rq,lq,lqu");
  are->add_option("--q-list", are_qs, "comma list of bit widths");
  are->add_option("--pe-list", are_pes, "comma list of crossover probabilities");
  are->add_option("--seed", are_seed, "optimizer seed");
  are->add_option("--out", are_out, "output CSV path, '-' for stdout");
  are->add_flag("--sweep", are_sweep, "emit a 1-bit threshold/information trace instead");
  are->add_option("--sweep-kind", sweep_kind, "rq | lq (with --sweep)");
  are->add_option("--sweep-pe", sweep_pe, "crossover probability (with --sweep)");
  are->add_option("--sweep-lo", sweep_lo, "grid start in sigma units (with --sweep)");
  are->add_option("--sweep-hi", sweep_hi, "grid end in sigma units (with --sweep)");
  are->add_option("--sweep-step", sweep_step, "grid step in sigma units (with --sweep)");

  // --- experiments ----------------------------------------------------
  ExperimentArgs roc_args, pdm_args, snr_args, mis_args;
  add_experiment_options(app.add_subcommand("roc", "ROC sweep over a false-alarm grid"), roc_args);
  add_experiment_options(app.add_subcommand("pd-vs-m", "detection probability versus sensors"),
                         pdm_args);
  add_experiment_options(app.add_subcommand("pd-vs-snr", "detection probability versus SNR"),
                         snr_args);
  add_experiment_options(
      app.add_subcommand("mismatch", "fusion under an inaccurate channel model"), mis_args);

  // --- validate -------------------------------------------------------
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check an experiment config");
  validate->add_option("--config", validate_path, "experiment config JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    std::fputs(app.help().c_str(), stderr);
    return kExitValidation;
  }

  if (design->parsed()) {
    char* json = nullptr;
    int rc = qd_design(design_kind.c_str(), design_q, design_pe, design_seed, &json);
    if (rc != QD_OK) return fail_with(rc);
    char req[160];
    std::snprintf(req, sizeof req, "design kind=%s q=%d pe=%.17g seed=%llu", design_kind.c_str(),
                  design_q, design_pe, design_seed);
    int exit_code = write_with_manifest(design_out, json, flag_manifest("design", req, design_seed));
    qd_string_free(json);
    return exit_code;
  }

  if (fisher->parsed()) {
    char* json = nullptr;
    int rc = qd_fisher(fisher_request.c_str(), &json);
    if (rc != QD_OK) return fail_with(rc);
    int exit_code =
        write_with_manifest(fisher_out, json, flag_manifest("fisher", fisher_request, 0));
    qd_string_free(json);
    return exit_code;
  }

  if (are->parsed()) {
    char* csv = nullptr;
    int rc;
    char req[256];
    if (are_sweep) {
      rc = qd_threshold_sweep(sweep_kind.c_str(), sweep_pe, sweep_lo, sweep_hi, sweep_step, &csv);
      std::snprintf(req, sizeof req, "sweep kind=%s pe=%.17g lo=%.17g hi=%.17g step=%.17g",
                    sweep_kind.c_str(), sweep_pe, sweep_lo, sweep_hi, sweep_step);
    } else {
      rc = qd_design_table(are_kinds.c_str(), are_qs.c_str(), are_pes.c_str(), are_seed, &csv);
      std::snprintf(req, sizeof req, "are kinds=%s q=%s pe=%s seed=%llu", are_kinds.c_str(),
                    are_qs.c_str(), are_pes.c_str(), are_seed);
    }
    if (rc != QD_OK) return fail_with(rc);
    int exit_code = write_with_manifest(are_out, csv, flag_manifest("are", req, are_seed));
    qd_string_free(csv);
    return exit_code;
  }

  if (validate->parsed()) {
    std::string config_text;
    if (!read_file(validate_path, config_text)) {
      std::fprintf(stderr, "error: cannot read '%s'\n", validate_path.c_str());
      return kExitValidation;
    }
    int rc = qd_validate(config_text.c_str());
    if (rc != QD_OK) return fail_with(rc);
    std::puts("ok");
    return kExitOk;
  }

  if (app.get_subcommand("roc")->parsed()) return run_experiment_command("roc", roc_args);
  if (app.get_subcommand("pd-vs-m")->parsed()) return run_experiment_command("pd-vs-m", pdm_args);
  if (app.get_subcommand("pd-vs-snr")->parsed())
    return run_experiment_command("pd-vs-snr", snr_args);
  if (app.get_subcommand("mismatch")->parsed()) return run_experiment_command("mismatch", mis_args);

  return kExitValidation;
}
