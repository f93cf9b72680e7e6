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
 * The Monte Carlo experiment engine. A run simulates photon-counting
 * trials for either theory in one measurement context under a parametric
 * imperfection model, tallies counts, and the estimators turn the two
 * context tables into the inequality report. A closed-form analytic
 * predictor computes the exact expectations of the same process for
 * cross-validation.
 *
 * Reproducibility contract: a run is addressed by (seed, parameters,
 * trials). Every trial draws from its own counter-based stream, and counts
 * are merged as integers, so results are bit-identical for any thread
 * count.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "photonctx/nchv.hpp"
#include "photonctx/observables.hpp"
#include "photonctx/optics.hpp"

namespace photonctx {

enum class Theory { QM, NCHV };
enum class Context { A, B };

std::string to_string(Theory t);
std::string to_string(Context c);

/// Parametric non-idealities. Ideal defaults throughout.
struct ImperfectionModel {
    /// Detection probability per detector, applied to the real photon.
    std::array<double, kNumDetectors> efficiency{1.0, 1.0, 1.0, 1.0,
                                                 1.0, 1.0, 1.0, 1.0};
    /// Probability of a spurious click per channel per trial window.
    double dark_count_prob = 0.0;
    /// Source polarization angle is 45 degrees plus this error (radians).
    double prep_angle_error = 0.0;
    /// Extra phase per interferometer arm segment, order
    /// (S1 u-input, S1 d-input, S2 u-input, S2 d-input).
    std::array<double, 4> arm_phases{0.0, 0.0, 0.0, 0.0};
    /// Power transmittance of the two balanced splitters (S1, S2).
    std::array<double, 2> bs_transmittance{0.5, 0.5};
    /// Weight of the pure prepared state against a fully dephased
    /// path-polarization mixture.
    double visibility = 1.0;

    /// All range violations (empty when the model is valid).
    std::vector<std::string> validate() const;

    /// Mean of the eight detector efficiencies; the joint-context
    /// apparatus is assigned this single efficiency.
    double mean_efficiency() const;
};

/// Assignable parameter paths: "efficiency" (all eight at once),
/// "efficiency.D1".."efficiency.D8", "dark_count_prob", "prep_angle_error",
/// "visibility", "arm_phase.s1_u"/"s1_d"/"s2_u"/"s2_d",
/// "bs_transmittance.s1"/"s2".
const std::vector<std::string> &imperfection_field_paths();

/// Set one field by path. Throws ConfigError for an unknown path. Range
/// checking is deferred to ImperfectionModel::validate so that callers can
/// collect every problem at once.
void set_imperfection_field(ImperfectionModel &imp, const std::string &path,
                            double value);

/// Outcome of a single trial.
struct TrialRecord {
    enum class Kind { Detector, Joint, NoDetection };

    Context context = Context::A;
    Kind kind = Kind::NoDetection;
    DetectorId detector = DetectorId::D1; ///< when kind == Detector
    int joint_outcome = 0;                ///< when kind == Joint, 0..3
    /// The resolved click was not produced by the real photon.
    bool dark_origin = false;
};

/// Integer tallies of one run. Only the table of the run's context is
/// populated; dark_count is a diagnostic sub-tally of the resolved clicks
/// (it is included in, not added to, the outcome counts).
struct CountsTable {
    Context context = Context::A;
    std::array<std::uint64_t, kNumDetectors> context_a_counts{};
    std::array<std::uint64_t, 4> context_b_counts{};
    std::uint64_t no_detection_count = 0;
    std::uint64_t dark_count = 0;
    std::uint64_t trials = 0;

    std::uint64_t detected() const;
    /// detected() + no_detection_count == trials.
    bool is_consistent() const;
    /// Add another table of the same context. Throws ConsistencyError on a
    /// context mismatch.
    void merge(const CountsTable &other);
};

/// Simulate `trials` independent trials. Per trial: draw the true outcome
/// (QM: Born probabilities of the imperfect preparation through the
/// imperfect network or the joint-context projectors; NCHV: a hidden
/// assignment mapped to its deterministic outcome), then the detection
/// layer (efficiency Bernoulli on the real hit, independent dark clicks,
/// uniform tie-break among simultaneous clicks, no click -> NoDetection).
///
/// `dist` is the hidden-state ensemble for NCHV runs (uniform over the
/// constraint-satisfying four when null); it is ignored for QM.
/// Invalid parameters are rejected with ConfigError before any trial runs.
/// Results are bit-identical for fixed (seed, parameters, trials) at any
/// `threads` value.
CountsTable run_experiment(Theory theory, Context context,
                           const ImperfectionModel &imp, std::uint64_t trials,
                           std::uint64_t seed, int threads = 1,
                           const AssignmentDistribution *dist = nullptr);

/// The estimated inequality terms and their uncertainties.
struct InequalityReport {
    double avg_z1z2 = 0.0;
    double se_z1z2 = 0.0;
    double avg_x1x2 = 0.0;
    double se_x1x2 = 0.0;
    double avg_product = 0.0;
    double se_product = 0.0;
    /// |1 + avg_z1z2 + avg_x1x2 - avg_product|.
    double lhs = 0.0;
    /// Propagated from the three terms including the covariance of the
    /// two estimates sharing the joint-context sample.
    double lhs_se = 0.0;
    /// (lhs - 2) / lhs_se; 0 when lhs_se = 0 and lhs = 2 exactly,
    /// +-infinity when lhs_se = 0 and lhs differs from 2.
    double violation_sigma = 0.0;
};

/// Estimate the averages from one context-A and one context-B table.
/// With fair_sampling (the default), averages condition on detected
/// trials; without it, every trial counts and undetected trials
/// contribute 0. Throws InsufficientDataError when either context has no
/// detected count, and ConsistencyError when the tables' contexts are
/// not (A, B).
InequalityReport estimate_averages(const CountsTable &counts_a,
                                   const CountsTable &counts_b,
                                   bool fair_sampling = true);

/// Exact expectations of the simulated process (no sampling error).
struct AnalyticPrediction {
    double avg_z1z2 = 0.0;
    double avg_x1x2 = 0.0;
    double avg_product = 0.0;
    double lhs = 0.0;
    /// Resolved-click probability per detector (context A) and per joint
    /// outcome (context B); each set sums to 1 - the matching
    /// no-detection probability.
    std::array<double, kNumDetectors> detector_probs{};
    std::array<double, 4> joint_probs{};
    double no_detection_prob_a = 0.0;
    double no_detection_prob_b = 0.0;
};

/// Closed-form prediction by density-operator algebra (QM) or exact
/// ensemble expectation (NCHV), pushed through the exact detection-layer
/// law (the dark/efficiency resolution enumerated over all click
/// subsets). Monte Carlo estimates converge to these values. The averages
/// are NaN in the degenerate fair-sampling case where nothing is ever
/// detected.
AnalyticPrediction analytic_prediction(Theory theory,
                                       const ImperfectionModel &imp,
                                       bool fair_sampling = true,
                                       const AssignmentDistribution *dist
                                       = nullptr);

/// One row of a parameter sweep.
struct SweepPoint {
    std::string parameter;
    double value = 0.0;
    CountsTable counts_a;
    CountsTable counts_b;
    InequalityReport report;
    double analytic_lhs = 0.0;
};

/// Run the experiment once per value of one imperfection field, both
/// contexts each time, with per-point seeds derived from `seed`. Throws
/// ConfigError for an unknown parameter path. An empty value list yields
/// an empty table.
std::vector<SweepPoint> sweep(Theory theory, const ImperfectionModel &base,
                              const std::string &parameter,
                              const std::vector<double> &values,
                              std::uint64_t trials, std::uint64_t seed,
                              int threads = 1, bool fair_sampling = true,
                              const AssignmentDistribution *dist = nullptr);

} // namespace photonctx
