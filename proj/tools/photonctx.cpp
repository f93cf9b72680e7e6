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

// Command-line driver. Commands:
//   ideal           exact predictions for the lossless instrument
//   bounds          quantum vs noncontextual maxima of the inequality
//   nchv-enumerate  all 16 noncontextual value assignments
//   run             Monte Carlo run of both measurement contexts
//   sweep           one run per value of one imperfection field
//
// Exit codes: 0 success, 1 internal error, 2 configuration error,
// 3 insufficient data (nothing detected).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photonctx/config.hpp"
#include "photonctx/csv.hpp"
#include "photonctx/errors.hpp"
#include "photonctx/experiment.hpp"
#include "photonctx/hilbert.hpp"
#include "photonctx/nchv.hpp"
#include "photonctx/observables.hpp"
#include "photonctx/optics.hpp"

namespace {

using namespace photonctx;

std::string fixed12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

std::string brief(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({"cannot read config file '" + path + "'"});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void cmd_ideal(std::ostream &os) {
    const OpticalNetwork net = build_fig1_network();
    const DetectorAmplitudes out = propagate(net, source_state());
    const auto probs = out.probabilities();

    os << "detector probabilities for the source state\n";
    for (int k = 0; k < kNumDetectors; ++k) {
        os << "  " << to_string(static_cast<DetectorId>(k)) << "  "
           << fixed12(probs[k]) << "\n";
    }

    const PhotonState psi = correlated_state();
    const EigenstateReport eig = verify_eigenstate_relations(psi);
    os << "\neigenstate residuals for the correlated state\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "  ||(Z1Z2 - I) psi||       %.3e\n",
                  eig.z1z2_residual);
    os << buf;
    std::snprintf(buf, sizeof(buf), "  ||(X1X2 - I) psi||       %.3e\n",
                  eig.x1x2_residual);
    os << buf;
    std::snprintf(buf, sizeof(buf), "  ||(Z1X2.X1Z2 + I) psi||  %.3e\n",
                  eig.anticorrelation_residual);
    os << buf;

    const double z = expectation(make_observable(ObservableName::Z1Z2), psi);
    const double x = expectation(make_observable(ObservableName::X1X2), psi);
    const double p =
        expectation(make_observable(ObservableName::Z1X2_X1Z2), psi);
    const double lhs = std::abs(1.0 + z + x - p);
    os << "\ninequality left-hand side  " << fixed12(lhs)
       << "  (noncontextual bound 2)\n";
}

void print_bound_summary(std::ostream &os, const ObservableBounds &bounds,
                         std::size_t satisfying_count) {
    os << "NCHV max = " << brief(bounds.nchv_max) << "\n";
    os << "QM max = " << brief(bounds.qm_max) << "\n";
    os << "satisfying count = " << satisfying_count << "\n";
}

void cmd_bounds(std::ostream &os) {
    const ObservableBounds bounds = observable_bounds();
    const ContradictionProof proof = contradiction_proof();

    os << "largest quantum eigenvalue of the combination  "
       << fixed12(bounds.qm_max) << "\n";
    const PhotonState maximizer{bounds.qm_argmax, Frame{}};
    const bool matches = equal_up_to_global_phase(maximizer, correlated_state());
    os << "maximizing state equals the correlated state (up to phase)  "
       << (matches ? "yes" : "no") << "\n\n";
    print_bound_summary(os, bounds, proof.satisfying.size());
}

void cmd_nchv_enumerate(std::ostream &os) {
    os << "  z1  x1  z2  x2     c  z1z2=+1  x1x2=+1  z1x2=-x1z2  detector\n";
    for (const ValueAssignment &a : enumerate_assignments()) {
        const ConstraintFlags flags = check_constraints(a);
        const DetectorId d = assignment_to_detector(a);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "  %+d  %+d  %+d  %+d    %+d  %7s  %7s  %10s  %8s\n",
                      a.z1, a.x1, a.z2, a.x2, c_value(a),
                      flags.eq_a ? "yes" : "no", flags.eq_b ? "yes" : "no",
                      flags.eq_c ? "yes" : "no", to_string(d).c_str());
        os << buf;
    }

    const ContradictionProof proof = contradiction_proof();
    os << "\n" << proof.argument << "\n\n";
    print_bound_summary(os, observable_bounds(), proof.satisfying.size());
}

std::vector<std::string> report_header(bool with_analytic) {
    std::vector<std::string> h = {"theory", "context", "param",
                                  "value",  "trials",  "seed"};
    for (int k = 0; k < kNumDetectors; ++k) {
        h.push_back("n_" + to_string(static_cast<DetectorId>(k)));
    }
    for (const char *name :
         {"avg_z1z2", "se_z1z2", "avg_x1x2", "se_x1x2", "avg_prod", "se_prod",
          "lhs", "lhs_se", "violation_sigma"}) {
        h.emplace_back(name);
    }
    if (with_analytic) {
        h.emplace_back("analytic_lhs");
    }
    return h;
}

std::vector<std::string> report_row(Theory theory, const std::string &param,
                                    const std::string &value,
                                    std::uint64_t trials, std::uint64_t seed,
                                    const CountsTable &counts_a,
                                    const InequalityReport &rep) {
    std::vector<std::string> row = {to_string(theory), "AB", param, value,
                                    std::to_string(trials),
                                    std::to_string(seed)};
    for (int k = 0; k < kNumDetectors; ++k) {
        row.push_back(std::to_string(counts_a.context_a_counts[k]));
    }
    for (double v : {rep.avg_z1z2, rep.se_z1z2, rep.avg_x1x2, rep.se_x1x2,
                     rep.avg_product, rep.se_product, rep.lhs, rep.lhs_se,
                     rep.violation_sigma}) {
        row.push_back(format_double(v));
    }
    return row;
}

void print_counts_table(std::ostream &os, const CountsTable &counts) {
    char buf[256];
    if (counts.context == Context::A) {
        os << "context A counts\n";
        for (int k = 0; k < kNumDetectors; ++k) {
            std::snprintf(buf, sizeof(buf), "  %s %10llu",
                          to_string(static_cast<DetectorId>(k)).c_str(),
                          static_cast<unsigned long long>(
                              counts.context_a_counts[k]));
            os << buf << ((k % 4 == 3) ? "\n" : "");
        }
    } else {
        os << "context B counts\n";
        static const char *labels[4] = {"(+1,+1)", "(+1,-1)", "(-1,+1)",
                                        "(-1,-1)"};
        for (int k = 0; k < 4; ++k) {
            std::snprintf(buf, sizeof(buf), "  %s %10llu", labels[k],
                          static_cast<unsigned long long>(
                              counts.context_b_counts[k]));
            os << buf;
        }
        os << "\n";
    }
    std::snprintf(buf, sizeof(buf),
                  "  no detection %llu, dark-origin clicks %llu\n",
                  static_cast<unsigned long long>(counts.no_detection_count),
                  static_cast<unsigned long long>(counts.dark_count));
    os << buf;
}

void print_report_table(std::ostream &os, const InequalityReport &rep) {
    os << "averages\n";
    os << "  <Z1Z2>       " << fixed12(rep.avg_z1z2) << "  se "
       << fixed12(rep.se_z1z2) << "\n";
    os << "  <X1X2>       " << fixed12(rep.avg_x1x2) << "  se "
       << fixed12(rep.se_x1x2) << "\n";
    os << "  <Z1X2.X1Z2>  " << fixed12(rep.avg_product) << "  se "
       << fixed12(rep.se_product) << "\n";
    os << "inequality\n";
    os << "  lhs          " << fixed12(rep.lhs) << "  se "
       << fixed12(rep.lhs_se) << "\n";
    os << "  violation    " << brief(rep.violation_sigma)
       << " sigma above the noncontextual bound 2\n";
}

void cmd_run(const RunConfig &cfg, std::ostream &os) {
    const std::uint64_t seed = *cfg.seed;
    const CountsTable counts_a =
        run_experiment(cfg.theory, Context::A, cfg.imperfection, cfg.trials,
                       seed, cfg.threads);
    const CountsTable counts_b =
        run_experiment(cfg.theory, Context::B, cfg.imperfection, cfg.trials,
                       seed, cfg.threads);
    const InequalityReport rep =
        estimate_averages(counts_a, counts_b, cfg.fair_sampling);

    if (cfg.format == "csv") {
        os << csv_join(report_header(false)) << "\n";
        os << csv_join(report_row(cfg.theory, "", "", cfg.trials, seed,
                                  counts_a, rep))
           << "\n";
        return;
    }

    os << "theory " << to_string(cfg.theory) << ", trials " << cfg.trials
       << ", seed " << seed << ", fair sampling "
       << (cfg.fair_sampling ? "on" : "off") << "\n\n";
    print_counts_table(os, counts_a);
    print_counts_table(os, counts_b);
    os << "\n";
    print_report_table(os, rep);
}

void cmd_sweep(const RunConfig &cfg, std::ostream &os) {
    const std::uint64_t seed = *cfg.seed;
    const std::vector<SweepPoint> points =
        sweep(cfg.theory, cfg.imperfection, cfg.sweep_parameter,
              cfg.sweep_values, cfg.trials, seed, cfg.threads,
              cfg.fair_sampling);

    if (cfg.format == "csv") {
        os << csv_join(report_header(true)) << "\n";
        for (const SweepPoint &p : points) {
            std::vector<std::string> row =
                report_row(cfg.theory, p.parameter, format_double(p.value),
                           cfg.trials, seed, p.counts_a, p.report);
            row.push_back(format_double(p.analytic_lhs));
            os << csv_join(row) << "\n";
        }
        return;
    }

    os << "sweep over " << cfg.sweep_parameter << " (theory "
       << to_string(cfg.theory) << ", " << cfg.trials
       << " trials per point, seed " << seed << ")\n\n";
    os << "        value         avg_z1z2         avg_x1x2         avg_prod"
       << "              lhs           lhs_se     sigma     analytic\n";
    for (const SweepPoint &p : points) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "  %11g  %15.12f  %15.12f  %15.12f  %15.12f  %15.12f"
                      "  %8.2f  %11.9f\n",
                      p.value, p.report.avg_z1z2, p.report.avg_x1x2,
                      p.report.avg_product, p.report.lhs, p.report.lhs_se,
                      p.report.violation_sigma, p.analytic_lhs);
        os << buf;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Single-photon interferometric test of noncontextuality:\n"
                 "exact predictions, Monte Carlo runs, and enumeration of the\n"
                 "rival noncontextual model."};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string format_flag;
    std::string out_flag;
    app.add_option("--config", config_path,
                   "Configuration file, one 'key = value' per line");
    app.add_option("--set", overrides,
                   "Override one config key as key=value (repeatable)");
    app.add_option("--format", format_flag,
                   "Output format for run/sweep: table or csv");
    app.add_option("--out", out_flag,
                   "Write the report to this file instead of stdout");
    app.set_version_flag("--version", "photonctx 0.1.0");

    CLI::App *sub_ideal =
        app.add_subcommand("ideal", "Exact predictions for the lossless instrument");
    CLI::App *sub_bounds =
        app.add_subcommand("bounds", "Quantum and noncontextual maxima of the inequality");
    CLI::App *sub_enum =
        app.add_subcommand("nchv-enumerate", "All 16 noncontextual value assignments");
    CLI::App *sub_run =
        app.add_subcommand("run", "Monte Carlo run of both measurement contexts");
    CLI::App *sub_sweep =
        app.add_subcommand("sweep", "One run per value of one imperfection field");
    for (CLI::App *sub : {sub_ideal, sub_bounds, sub_enum, sub_run, sub_sweep}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();

        std::vector<std::string> merged = overrides;
        if (!format_flag.empty()) {
            merged.push_back("format=" + format_flag);
        }
        if (!out_flag.empty()) {
            merged.push_back("out=" + out_flag);
        }
        std::string file_text;
        if (!config_path.empty()) {
            file_text = read_text_file(config_path);
        }
        const RunConfig cfg = photonctx::parse_config(file_text, merged);
        photonctx::validate_for_command(cfg, command);

        std::ofstream file_out;
        std::ostream *os = &std::cout;
        if (!cfg.out_path.empty()) {
            file_out.open(cfg.out_path, std::ios::binary);
            if (!file_out) {
                throw ConfigError(
                    {"cannot open output file '" + cfg.out_path + "'"});
            }
            os = &file_out;
        }

        if (command == "ideal") {
            cmd_ideal(*os);
        } else if (command == "bounds") {
            cmd_bounds(*os);
        } else if (command == "nchv-enumerate") {
            cmd_nchv_enumerate(*os);
        } else if (command == "run") {
            cmd_run(cfg, *os);
        } else {
            cmd_sweep(cfg, *os);
        }
        os->flush();
        if (!*os) {
            std::cerr << "error: failed writing output\n";
            return 1;
        }
        return 0;
    } catch (const photonctx::ConfigError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const photonctx::InsufficientDataError &e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
