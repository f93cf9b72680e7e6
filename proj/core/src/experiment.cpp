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

#include "photonctx/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "photonctx/errors.hpp"
#include "photonctx/rng.hpp"

namespace photonctx {

std::string to_string(Theory t) { return t == Theory::QM ? "QM" : "NCHV"; }

std::string to_string(Context c) { return c == Context::A ? "A" : "B"; }

std::vector<std::string> ImperfectionModel::validate() const {
    std::vector<std::string> issues;
    auto in_unit = [&](double v, const std::string &name, bool open_top) {
        if (!(v >= 0.0) || (open_top ? !(v < 1.0) : !(v <= 1.0))) {
            issues.push_back(name + " must lie in [0, 1" +
                             (open_top ? ")" : "]") + ", got " +
                             std::to_string(v));
        }
    };
    for (int k = 0; k < kNumDetectors; ++k) {
        in_unit(efficiency[k], "efficiency.D" + std::to_string(k + 1), false);
    }
    in_unit(dark_count_prob, "dark_count_prob", true);
    in_unit(visibility, "visibility", false);
    in_unit(bs_transmittance[0], "bs_transmittance.s1", false);
    in_unit(bs_transmittance[1], "bs_transmittance.s2", false);
    if (!std::isfinite(prep_angle_error)) {
        issues.push_back("prep_angle_error must be finite");
    }
    for (double phi : arm_phases) {
        if (!std::isfinite(phi)) {
            issues.push_back("arm phases must be finite");
            break;
        }
    }
    return issues;
}

double ImperfectionModel::mean_efficiency() const {
    double sum = 0.0;
    for (double e : efficiency) {
        sum += e;
    }
    return sum / kNumDetectors;
}

const std::vector<std::string> &imperfection_field_paths() {
    static const std::vector<std::string> paths = [] {
        std::vector<std::string> p{"efficiency"};
        for (int k = 1; k <= kNumDetectors; ++k) {
            p.push_back("efficiency.D" + std::to_string(k));
        }
        p.insert(p.end(), {"dark_count_prob", "prep_angle_error", "visibility",
                           "arm_phase.s1_u", "arm_phase.s1_d", "arm_phase.s2_u",
                           "arm_phase.s2_d", "bs_transmittance.s1",
                           "bs_transmittance.s2"});
        return p;
    }();
    return paths;
}

void set_imperfection_field(ImperfectionModel &imp, const std::string &path,
                            double value) {
    if (path == "efficiency") {
        imp.efficiency.fill(value);
        return;
    }
    for (int k = 0; k < kNumDetectors; ++k) {
        if (path == "efficiency.D" + std::to_string(k + 1)) {
            imp.efficiency[k] = value;
            return;
        }
    }
    if (path == "dark_count_prob") {
        imp.dark_count_prob = value;
        return;
    }
    if (path == "prep_angle_error") {
        imp.prep_angle_error = value;
        return;
    }
    if (path == "visibility") {
        imp.visibility = value;
        return;
    }
    static constexpr std::array<const char *, 4> kArm = {
        "arm_phase.s1_u", "arm_phase.s1_d", "arm_phase.s2_u", "arm_phase.s2_d"};
    for (int k = 0; k < 4; ++k) {
        if (path == kArm[k]) {
            imp.arm_phases[k] = value;
            return;
        }
    }
    if (path == "bs_transmittance.s1") {
        imp.bs_transmittance[0] = value;
        return;
    }
    if (path == "bs_transmittance.s2") {
        imp.bs_transmittance[1] = value;
        return;
    }
    throw ConfigError({"unknown imperfection field '" + path + "'"});
}

std::uint64_t CountsTable::detected() const {
    std::uint64_t sum = 0;
    if (context == Context::A) {
        for (std::uint64_t n : context_a_counts) {
            sum += n;
        }
    } else {
        for (std::uint64_t n : context_b_counts) {
            sum += n;
        }
    }
    return sum;
}

bool CountsTable::is_consistent() const {
    return detected() + no_detection_count == trials;
}

void CountsTable::merge(const CountsTable &other) {
    if (context != other.context) {
        throw ConsistencyError("cannot merge counts of different contexts");
    }
    for (int k = 0; k < kNumDetectors; ++k) {
        context_a_counts[k] += other.context_a_counts[k];
    }
    for (int k = 0; k < 4; ++k) {
        context_b_counts[k] += other.context_b_counts[k];
    }
    no_detection_count += other.no_detection_count;
    dark_count += other.dark_count;
    trials += other.trials;
}

namespace {

/// The prepared state as a mixture of at most three pure components in
/// the (Primary, Rectilinear) frame: the intended superposition with
/// weight `visibility` and the two dephased basis components.
struct Preparation {
    std::array<PhotonState, 3> component;
    std::array<double, 3> weight;
};

Preparation make_preparation(const ImperfectionModel &imp) {
    const double theta = M_PI / 4.0 + imp.prep_angle_error;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Frame primary{PathFrame::Primary, PolFrame::Rectilinear};

    Preparation prep;
    prep.component[0].frame = primary;
    prep.component[0].amps << c, 0.0, 0.0, s;
    prep.component[1] = basis_state(PathMode::U, PolAxis::H, primary);
    prep.component[2] = basis_state(PathMode::D, PolAxis::V, primary);
    prep.weight = {imp.visibility, (1.0 - imp.visibility) * c * c,
                   (1.0 - imp.visibility) * s * s};
    return prep;
}

/// Everything a trial needs, precomputed once per run.
struct RunModel {
    Context context = Context::A;
    int channels = kNumDetectors;
    bool nchv = false;

    // QM: cumulative Born probabilities over the true-outcome channels.
    std::array<double, kNumDetectors> outcome_cdf{};
    int last_positive_channel = 0;

    // NCHV: cumulative assignment weights and the channel each maps to.
    std::array<double, kNumAssignments> assignment_cdf{};
    std::array<int, kNumAssignments> assignment_channel{};
    int last_positive_assignment = 0;

    std::array<double, kNumDetectors> eta{};
    double dark_q = 0.0;
};

int joint_index(int z, int x) { return (z < 0 ? 2 : 0) + (x < 0 ? 1 : 0); }

/// The exact true-outcome distribution before the detection layer.
std::array<double, kNumDetectors>
true_distribution(Theory theory, Context context, const ImperfectionModel &imp,
                  const AssignmentDistribution &dist) {
    std::array<double, kNumDetectors> p{};
    if (theory == Theory::NCHV) {
        const auto all = enumerate_assignments();
        for (int i = 0; i < kNumAssignments; ++i) {
            const int ch =
                context == Context::A
                    ? static_cast<int>(assignment_to_detector(all[i]))
                    : joint_index(all[i].z1 * all[i].z2, all[i].x1 * all[i].x2);
            p[ch] += dist.weights[i];
        }
        return p;
    }

    const Preparation prep = make_preparation(imp);
    if (context == Context::A) {
        const OpticalNetwork net = build_fig1_network(
            Fig1Params{imp.arm_phases, imp.bs_transmittance});
        for (int c = 0; c < 3; ++c) {
            if (prep.weight[c] == 0.0) {
                continue;
            }
            const auto probs =
                propagate_primary(net, prep.component[c]).probabilities();
            for (int k = 0; k < kNumDetectors; ++k) {
                p[k] += prep.weight[c] * probs[k];
            }
        }
    } else {
        for (int c = 0; c < 3; ++c) {
            if (prep.weight[c] == 0.0) {
                continue;
            }
            const auto probs = context_b_measure(prep.component[c]);
            for (int k = 0; k < 4; ++k) {
                p[k] += prep.weight[c] * probs[k];
            }
        }
    }
    return p;
}

RunModel build_model(Theory theory, Context context,
                     const ImperfectionModel &imp,
                     const AssignmentDistribution &dist) {
    RunModel model;
    model.context = context;
    model.channels = context == Context::A ? kNumDetectors : 4;
    model.dark_q = imp.dark_count_prob;
    if (context == Context::A) {
        model.eta = imp.efficiency;
    } else {
        model.eta.fill(imp.mean_efficiency());
    }

    if (theory == Theory::NCHV) {
        model.nchv = true;
        model.assignment_cdf = dist.cumulative();
        const auto all = enumerate_assignments();
        for (int i = 0; i < kNumAssignments; ++i) {
            model.assignment_channel[i] =
                context == Context::A
                    ? static_cast<int>(assignment_to_detector(all[i]))
                    : joint_index(all[i].z1 * all[i].z2, all[i].x1 * all[i].x2);
            if (dist.weights[i] > 0.0) {
                model.last_positive_assignment = i;
            }
        }
    } else {
        const auto p = true_distribution(theory, context, imp, dist);
        double sum = 0.0;
        for (int k = 0; k < model.channels; ++k) {
            sum += p[k];
            model.outcome_cdf[k] = sum;
            if (p[k] > 0.0) {
                model.last_positive_channel = k;
            }
        }
    }
    return model;
}

/// Index of the `pick`-th set bit of `mask`.
int nth_set_bit(unsigned mask, int pick) {
    for (int k = 0;; ++k) {
        if (mask & (1u << k)) {
            if (pick-- == 0) {
                return k;
            }
        }
    }
}

TrialRecord simulate_trial(const RunModel &m, PhiloxRng &rng) {
    int true_channel;
    if (m.nchv) {
        const double u = rng.next_double();
        int idx = m.last_positive_assignment;
        for (int i = 0; i < kNumAssignments; ++i) {
            if (u < m.assignment_cdf[i]) {
                idx = i;
                break;
            }
        }
        true_channel = m.assignment_channel[idx];
    } else {
        const double u = rng.next_double();
        true_channel = m.last_positive_channel;
        for (int k = 0; k < m.channels; ++k) {
            if (u < m.outcome_cdf[k]) {
                true_channel = k;
                break;
            }
        }
    }

    const bool real_fired = rng.bernoulli(m.eta[true_channel]);
    unsigned fired = real_fired ? (1u << true_channel) : 0u;
    if (m.dark_q > 0.0) {
        for (int k = 0; k < m.channels; ++k) {
            if (rng.bernoulli(m.dark_q)) {
                fired |= 1u << k;
            }
        }
    }

    TrialRecord rec;
    rec.context = m.context;
    if (fired == 0u) {
        rec.kind = TrialRecord::Kind::NoDetection;
        return rec;
    }

    const int clicks = std::popcount(fired);
    int winner;
    if (clicks == 1) {
        winner = std::countr_zero(fired);
    } else {
        int pick = static_cast<int>(rng.next_double() * clicks);
        if (pick >= clicks) {
            pick = clicks - 1;
        }
        winner = nth_set_bit(fired, pick);
    }

    if (m.context == Context::A) {
        rec.kind = TrialRecord::Kind::Detector;
        rec.detector = static_cast<DetectorId>(winner);
    } else {
        rec.kind = TrialRecord::Kind::Joint;
        rec.joint_outcome = winner;
    }
    rec.dark_origin = !(real_fired && winner == true_channel);
    return rec;
}

void tally(CountsTable &table, const TrialRecord &rec) {
    switch (rec.kind) {
    case TrialRecord::Kind::NoDetection:
        ++table.no_detection_count;
        break;
    case TrialRecord::Kind::Detector:
        ++table.context_a_counts[static_cast<int>(rec.detector)];
        if (rec.dark_origin) {
            ++table.dark_count;
        }
        break;
    case TrialRecord::Kind::Joint:
        ++table.context_b_counts[rec.joint_outcome];
        if (rec.dark_origin) {
            ++table.dark_count;
        }
        break;
    }
    ++table.trials;
}

void validate_run_parameters(const ImperfectionModel &imp, std::uint64_t trials,
                             int threads, Theory theory,
                             const AssignmentDistribution &dist) {
    std::vector<std::string> issues = imp.validate();
    if (trials < 1) {
        issues.push_back("trials must be at least 1");
    }
    if (threads < 1) {
        issues.push_back("threads must be at least 1");
    }
    if (theory == Theory::NCHV && !dist.is_normalized()) {
        issues.push_back("assignment distribution weights must be nonnegative "
                         "and sum to 1");
    }
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

} // namespace

CountsTable run_experiment(Theory theory, Context context,
                           const ImperfectionModel &imp, std::uint64_t trials,
                           std::uint64_t seed, int threads,
                           const AssignmentDistribution *dist) {
    const AssignmentDistribution ensemble =
        dist != nullptr ? *dist : AssignmentDistribution::uniform_constrained();
    validate_run_parameters(imp, trials, threads, theory, ensemble);

    const RunModel model = build_model(theory, context, imp, ensemble);
    const std::uint64_t run_seed =
        derive_seed(seed, static_cast<std::uint64_t>(context));

    const int workers =
        static_cast<int>(std::min<std::uint64_t>(threads, trials));
    std::vector<CountsTable> partial(workers);
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, CountsTable *out) {
        out->context = model.context;
        for (std::uint64_t t = lo; t < hi; ++t) {
            PhiloxRng rng(run_seed, t);
            tally(*out, simulate_trial(model, rng));
        }
    };

    if (workers == 1) {
        run_range(0, trials, &partial[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t extra = trials % workers;
        std::uint64_t lo = 0;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t hi = lo + chunk + (w < int(extra) ? 1 : 0);
            pool.emplace_back(run_range, lo, hi, &partial[w]);
            lo = hi;
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }

    CountsTable result;
    result.context = model.context;
    for (const CountsTable &part : partial) {
        result.merge(part);
    }
    return result;
}

namespace {

struct TermEstimate {
    double mean = 0.0;
    double variance = 0.0;
};

double safe_se(double variance) { return std::sqrt(std::max(0.0, variance)); }

} // namespace

InequalityReport estimate_averages(const CountsTable &counts_a,
                                   const CountsTable &counts_b,
                                   bool fair_sampling) {
    if (counts_a.context != Context::A || counts_b.context != Context::B) {
        throw ConsistencyError(
            "estimate_averages expects a context-A and a context-B table");
    }
    const std::uint64_t det_a = counts_a.detected();
    const std::uint64_t det_b = counts_b.detected();
    if (det_a == 0 || det_b == 0) {
        throw InsufficientDataError(
            std::string("no detected counts in context ") +
            (det_a == 0 ? "A" : "B"));
    }

    double sum_p = 0.0;
    for (int k = 0; k < kNumDetectors; ++k) {
        sum_p += double(counts_a.context_a_counts[k]) *
                 detector_values(static_cast<DetectorId>(k)).product;
    }
    double sum_z = 0.0, sum_x = 0.0, sum_zx = 0.0;
    for (int j = 0; j < 4; ++j) {
        const auto [z, x] = context_b_outcome_values(j);
        const double n = double(counts_b.context_b_counts[j]);
        sum_z += n * z;
        sum_x += n * x;
        sum_zx += n * z * x;
    }

    InequalityReport rep;
    double cov_zx;
    if (fair_sampling) {
        rep.avg_product = sum_p / double(det_a);
        rep.avg_z1z2 = sum_z / double(det_b);
        rep.avg_x1x2 = sum_x / double(det_b);
        const double mean_zx = sum_zx / double(det_b);
        rep.se_product =
            safe_se((1.0 - rep.avg_product * rep.avg_product) / double(det_a));
        rep.se_z1z2 =
            safe_se((1.0 - rep.avg_z1z2 * rep.avg_z1z2) / double(det_b));
        rep.se_x1x2 =
            safe_se((1.0 - rep.avg_x1x2 * rep.avg_x1x2) / double(det_b));
        cov_zx = (mean_zx - rep.avg_z1z2 * rep.avg_x1x2) / double(det_b);
    } else {
        const double na = double(counts_a.trials);
        const double nb = double(counts_b.trials);
        const double frac_a = double(det_a) / na;
        const double frac_b = double(det_b) / nb;
        rep.avg_product = sum_p / na;
        rep.avg_z1z2 = sum_z / nb;
        rep.avg_x1x2 = sum_x / nb;
        const double mean_zx = sum_zx / nb;
        rep.se_product =
            safe_se((frac_a - rep.avg_product * rep.avg_product) / na);
        rep.se_z1z2 = safe_se((frac_b - rep.avg_z1z2 * rep.avg_z1z2) / nb);
        rep.se_x1x2 = safe_se((frac_b - rep.avg_x1x2 * rep.avg_x1x2) / nb);
        cov_zx = (mean_zx - rep.avg_z1z2 * rep.avg_x1x2) / nb;
    }

    rep.lhs = std::abs(1.0 + rep.avg_z1z2 + rep.avg_x1x2 - rep.avg_product);
    rep.lhs_se = safe_se(rep.se_z1z2 * rep.se_z1z2 + rep.se_x1x2 * rep.se_x1x2 +
                         rep.se_product * rep.se_product + 2.0 * cov_zx);
    if (rep.lhs_se > 0.0) {
        rep.violation_sigma = (rep.lhs - 2.0) / rep.lhs_se;
    } else if (rep.lhs == 2.0) {
        rep.violation_sigma = 0.0;
    } else {
        rep.violation_sigma = rep.lhs > 2.0
                                  ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
    }
    return rep;
}

namespace {

/// Exact law of the detection layer: given the true hit on channel t,
/// the probability that the trial resolves to channel k (or to no
/// detection), obtained by summing over every subset of dark clicks.
struct ResolveLaw {
    // resolve[t][k]; no_detection[t]
    std::array<std::array<double, kNumDetectors>, kNumDetectors> resolve{};
    std::array<double, kNumDetectors> no_detection{};
};

ResolveLaw resolve_law(int channels, const std::array<double, 8> &eta,
                       double q) {
    ResolveLaw law;
    const unsigned subsets = 1u << channels;
    for (int t = 0; t < channels; ++t) {
        for (int real = 0; real < 2; ++real) {
            const double p_real = real ? eta[t] : 1.0 - eta[t];
            if (p_real == 0.0) {
                continue;
            }
            for (unsigned mask = 0; mask < subsets; ++mask) {
                double p_mask = 1.0;
                for (int k = 0; k < channels; ++k) {
                    p_mask *= (mask & (1u << k)) ? q : 1.0 - q;
                }
                if (p_mask == 0.0) {
                    continue;
                }
                const unsigned fired = mask | (real ? (1u << t) : 0u);
                const double p = p_real * p_mask;
                if (fired == 0u) {
                    law.no_detection[t] += p;
                    continue;
                }
                const double share = p / std::popcount(fired);
                for (int k = 0; k < channels; ++k) {
                    if (fired & (1u << k)) {
                        law.resolve[t][k] += share;
                    }
                }
            }
        }
    }
    return law;
}

/// Mean of per-channel values under the resolve law, with the
/// fair-sampling conditioning choice applied.
struct ChannelAverages {
    std::array<double, kNumDetectors> resolved{};
    double no_detection = 0.0;
};

ChannelAverages resolved_distribution(int channels,
                                      const std::array<double, 8> &p_true,
                                      const std::array<double, 8> &eta,
                                      double q) {
    const ResolveLaw law = resolve_law(channels, eta, q);
    ChannelAverages out;
    for (int t = 0; t < channels; ++t) {
        if (p_true[t] == 0.0) {
            continue;
        }
        out.no_detection += p_true[t] * law.no_detection[t];
        for (int k = 0; k < channels; ++k) {
            out.resolved[k] += p_true[t] * law.resolve[t][k];
        }
    }
    return out;
}

} // namespace

AnalyticPrediction analytic_prediction(Theory theory,
                                       const ImperfectionModel &imp,
                                       bool fair_sampling,
                                       const AssignmentDistribution *dist) {
    const AssignmentDistribution ensemble =
        dist != nullptr ? *dist : AssignmentDistribution::uniform_constrained();
    validate_run_parameters(imp, 1, 1, theory, ensemble);

    const auto true_a = true_distribution(theory, Context::A, imp, ensemble);
    const auto true_b = true_distribution(theory, Context::B, imp, ensemble);

    const ChannelAverages ctx_a =
        resolved_distribution(kNumDetectors, true_a, imp.efficiency,
                              imp.dark_count_prob);
    std::array<double, 8> eta_b{};
    eta_b.fill(imp.mean_efficiency());
    const ChannelAverages ctx_b =
        resolved_distribution(4, true_b, eta_b, imp.dark_count_prob);

    AnalyticPrediction pred;
    for (int k = 0; k < kNumDetectors; ++k) {
        pred.detector_probs[k] = ctx_a.resolved[k];
    }
    for (int j = 0; j < 4; ++j) {
        pred.joint_probs[j] = ctx_b.resolved[j];
    }
    pred.no_detection_prob_a = ctx_a.no_detection;
    pred.no_detection_prob_b = ctx_b.no_detection;

    double sum_p = 0.0;
    for (int k = 0; k < kNumDetectors; ++k) {
        sum_p += ctx_a.resolved[k] *
                 detector_values(static_cast<DetectorId>(k)).product;
    }
    double sum_z = 0.0, sum_x = 0.0;
    for (int j = 0; j < 4; ++j) {
        const auto [z, x] = context_b_outcome_values(j);
        sum_z += ctx_b.resolved[j] * z;
        sum_x += ctx_b.resolved[j] * x;
    }

    if (fair_sampling) {
        const double det_a = 1.0 - ctx_a.no_detection;
        const double det_b = 1.0 - ctx_b.no_detection;
        pred.avg_product = sum_p / det_a;
        pred.avg_z1z2 = sum_z / det_b;
        pred.avg_x1x2 = sum_x / det_b;
    } else {
        pred.avg_product = sum_p;
        pred.avg_z1z2 = sum_z;
        pred.avg_x1x2 = sum_x;
    }
    pred.lhs =
        std::abs(1.0 + pred.avg_z1z2 + pred.avg_x1x2 - pred.avg_product);
    return pred;
}

std::vector<SweepPoint> sweep(Theory theory, const ImperfectionModel &base,
                              const std::string &parameter,
                              const std::vector<double> &values,
                              std::uint64_t trials, std::uint64_t seed,
                              int threads, bool fair_sampling,
                              const AssignmentDistribution *dist) {
    const auto &paths = imperfection_field_paths();
    if (std::find(paths.begin(), paths.end(), parameter) == paths.end()) {
        throw ConfigError({"unknown sweep parameter '" + parameter + "'"});
    }

    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ImperfectionModel imp = base;
        set_imperfection_field(imp, parameter, values[i]);
        const std::uint64_t point_seed = derive_seed(seed, i);

        SweepPoint point;
        point.parameter = parameter;
        point.value = values[i];
        point.counts_a = run_experiment(theory, Context::A, imp, trials,
                                        point_seed, threads, dist);
        point.counts_b = run_experiment(theory, Context::B, imp, trials,
                                        point_seed, threads, dist);
        point.report =
            estimate_averages(point.counts_a, point.counts_b, fair_sampling);
        point.analytic_lhs =
            analytic_prediction(theory, imp, fair_sampling, dist).lhs;
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace photonctx
