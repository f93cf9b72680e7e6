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

#include "photonctx/config.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>

#include "photonctx/errors.hpp"

namespace photonctx {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_u64(std::string_view s, std::uint64_t &out) {
    const char *end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc() && res.ptr == end && !s.empty();
}

bool parse_int(std::string_view s, int &out) {
    const char *end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc() && res.ptr == end && !s.empty();
}

bool parse_double(std::string_view s, double &out) {
    const char *end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc() && res.ptr == end && !s.empty();
}

bool parse_value_list(std::string_view s, std::vector<double> &out) {
    out.clear();
    if (trim(s).empty()) {
        return true;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string_view item =
            trim(s.substr(start, comma == std::string_view::npos
                                     ? std::string_view::npos
                                     : comma - start));
        double v;
        if (!parse_double(item, v)) {
            return false;
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return true;
}

/// Apply one key=value pair; report problems into `issues`, prefixed by
/// `where` (a line number or the override text).
void apply_key(RunConfig &cfg, std::string_view key, std::string_view value,
               const std::string &where, std::vector<std::string> &issues) {
    auto bad_value = [&](const std::string &expected) {
        issues.push_back(where + ": value '" + std::string(value) + "' for '" +
                         std::string(key) + "' is not " + expected);
    };

    if (key == "theory") {
        if (value == "QM") {
            cfg.theory = Theory::QM;
        } else if (value == "NCHV") {
            cfg.theory = Theory::NCHV;
        } else {
            bad_value("one of QM, NCHV");
        }
    } else if (key == "trials") {
        if (!parse_u64(value, cfg.trials)) {
            bad_value("an unsigned integer");
        }
    } else if (key == "seed") {
        std::uint64_t seed;
        if (parse_u64(value, seed)) {
            cfg.seed = seed;
        } else {
            bad_value("an unsigned integer");
        }
    } else if (key == "threads") {
        if (!parse_int(value, cfg.threads)) {
            bad_value("an integer");
        }
    } else if (key == "fair_sampling") {
        if (value == "true") {
            cfg.fair_sampling = true;
        } else if (value == "false") {
            cfg.fair_sampling = false;
        } else {
            bad_value("one of true, false");
        }
    } else if (key == "format") {
        cfg.format = std::string(value);
    } else if (key == "out") {
        cfg.out_path = std::string(value);
    } else if (key == "sweep.parameter") {
        cfg.sweep_parameter = std::string(value);
    } else if (key == "sweep.values") {
        if (!parse_value_list(value, cfg.sweep_values)) {
            bad_value("a comma-separated list of real numbers");
        }
    } else if (key.starts_with("imperfection.")) {
        const std::string path(key.substr(std::string_view("imperfection.").size()));
        const auto &paths = imperfection_field_paths();
        if (std::find(paths.begin(), paths.end(), path) == paths.end()) {
            issues.push_back(where + ": unknown key '" + std::string(key) + "'");
            return;
        }
        double v;
        if (!parse_double(value, v)) {
            bad_value("a real number");
            return;
        }
        set_imperfection_field(cfg.imperfection, path, v);
    } else {
        issues.push_back(where + ": unknown key '" + std::string(key) + "'");
    }
}

void apply_line(RunConfig &cfg, std::string_view line, const std::string &where,
                std::vector<std::string> &issues) {
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
        return;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
        issues.push_back(where + ": expected 'key = value', got '" +
                         std::string(line) + "'");
        return;
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
        issues.push_back(where + ": missing key before '='");
        return;
    }
    apply_key(cfg, key, value, where, issues);
}

} // namespace

RunConfig parse_config(const std::string &file_text,
                       const std::vector<std::string> &overrides) {
    RunConfig cfg;
    std::vector<std::string> issues;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= file_text.size()) {
        const std::size_t nl = file_text.find('\n', pos);
        const std::string_view line(
            file_text.data() + pos,
            (nl == std::string::npos ? file_text.size() : nl) - pos);
        ++line_no;
        apply_line(cfg, line, "line " + std::to_string(line_no), issues);
        if (nl == std::string::npos) {
            break;
        }
        pos = nl + 1;
    }

    for (const std::string &ov : overrides) {
        apply_line(cfg, ov, "override '" + ov + "'", issues);
    }

    if (cfg.trials < 1) {
        issues.push_back("trials must be at least 1");
    }
    if (cfg.threads < 1) {
        issues.push_back("threads must be at least 1");
    }
    if (cfg.format != "table" && cfg.format != "csv") {
        issues.push_back("format must be one of table, csv; got '" +
                         cfg.format + "'");
    }
    if (!cfg.sweep_parameter.empty()) {
        const auto &paths = imperfection_field_paths();
        if (std::find(paths.begin(), paths.end(), cfg.sweep_parameter) ==
            paths.end()) {
            issues.push_back("sweep.parameter '" + cfg.sweep_parameter +
                             "' is not an imperfection field path");
        }
    }
    for (const std::string &issue : cfg.imperfection.validate()) {
        issues.push_back("imperfection." + issue);
    }

    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    return cfg;
}

void validate_for_command(const RunConfig &cfg, const std::string &command) {
    std::vector<std::string> issues;
    if (command == "run" || command == "sweep") {
        if (!cfg.seed.has_value()) {
            issues.push_back("'" + command +
                             "' requires an explicit seed; set it in the "
                             "config file or with --set seed=<n>");
        }
    }
    if (command == "sweep" && cfg.sweep_parameter.empty()) {
        issues.push_back("'sweep' requires sweep.parameter");
    }
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

} // namespace photonctx
