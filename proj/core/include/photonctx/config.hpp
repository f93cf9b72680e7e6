// Copyright 2026 The photonctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Run configuration: a plain-text `key = value` format with `#` comments
 * and dot-namespaced keys, merged with command-line overrides (overrides
 * beat file values, file values beat defaults). Every parse and range
 * problem is collected and reported together.
 *
 * Keys:
 *   theory                QM | NCHV                    (default QM)
 *   trials                integer >= 1                 (default 100000)
 *   seed                  unsigned integer             (required for runs)
 *   threads               integer >= 1                 (default 1)
 *   fair_sampling         true | false                 (default true)
 *   format                table | csv                  (default table)
 *   out                   output file path             (default stdout)
 *   imperfection.<field>  see imperfection_field_paths()
 *   sweep.parameter       one imperfection field path
 *   sweep.values          comma-separated real numbers
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "photonctx/experiment.hpp"

namespace photonctx {

struct RunConfig {
    Theory theory = Theory::QM;
    std::uint64_t trials = 100000;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool fair_sampling = true;
    ImperfectionModel imperfection;
    std::string format = "table";
    std::string out_path;
    std::string sweep_parameter;
    std::vector<double> sweep_values;
};

/// Parse a config file body and apply overrides of the form "key=value".
/// Throws ConfigError carrying every problem found: malformed lines (with
/// line numbers), unknown keys, unparsable values, out-of-range values.
RunConfig parse_config(const std::string &file_text,
                       const std::vector<std::string> &overrides = {});

/// Command-specific requirements: `run` and `sweep` need an explicit seed
/// (randomness is never drawn from the environment), and `sweep` needs
/// sweep.parameter. Throws ConfigError.
void validate_for_command(const RunConfig &cfg, const std::string &command);

} // namespace photonctx
