// SPDX-License-Identifier: Apache-2.0
//
// JSON serialization of experiment configurations and design results. The
// config schema mirrors ExperimentConfig; scalar pe / h_norm_sq entries are
// broadcast to all sensors. Parse errors surface as std::invalid_argument
// with a message naming the offending field.
#pragma once

#include <string>

#include "quantdet/design.hpp"
#include "quantdet/experiment.hpp"

namespace quantdet {

// Parses a config document such as
//   {"system": {"M":300,"N":1000,"p":0.03,"sigma0_sq":4,"sigma_w_sq":1,
//               "pe":0.01,"h_norm_sq":1},
//    "quantizers": [{"label":"3b-LQ","kind":"lq","q":3,"design":{"pe":0.01}},
//                   {"label":"1b-RQ","kind":"rq","q":1,"thresholds":[0.61]}],
//    "detectors": ["RQ-LMPT","LQ-LMPT","clairvoyant"],
//    "trials": 5000, "seed": 42, "mode": "exact",
//    "sweep": {"axis":"pfa","values":[0.01,0.05,0.1,0.3]},
//    "pfa": 0.1}
// "pfa" is optional (default 0.1) and only read by fixed-operating-point
// sweeps.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// {"kind","q","thresholds","objective","normalized_fi","are"}; the quantizer
// fields round-trip into a config's quantizer entry.
std::string design_result_to_json(const DesignResult& result);

}  // namespace quantdet
