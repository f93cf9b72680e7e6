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

#include <cmath>
#include <numeric>

#include <doctest.h>

#include "photonctx/errors.hpp"
#include "photonctx/experiment.hpp"
#include "photonctx/nchv.hpp"

using namespace photonctx;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool same_counts(const CountsTable &a, const CountsTable &b) {
    return a.context == b.context && a.context_a_counts == b.context_a_counts &&
           a.context_b_counts == b.context_b_counts &&
           a.no_detection_count == b.no_detection_count &&
           a.dark_count == b.dark_count && a.trials == b.trials;
}

bool within(double value, double target, double se) {
    return std::abs(value - target) <= 4.0 * se + 1e-12;
}

ImperfectionModel noisy_point() {
    ImperfectionModel imp;
    imp.visibility = 0.9;
    imp.prep_angle_error = 2.0 * kPi / 180.0;
    for (double &e : imp.efficiency) {
        e = 0.35;
    }
    imp.efficiency[2] = 0.2;
    imp.dark_count_prob = 1e-3;
    return imp;
}

} // namespace

TEST_CASE("imperfection validation accepts the ideal model") {
    CHECK(ImperfectionModel{}.validate().empty());
}

TEST_CASE("imperfection validation collects every violation") {
    ImperfectionModel imp;
    imp.visibility = 1.5;
    imp.efficiency[3] = -0.1;
    imp.dark_count_prob = 1.0;
    const auto issues = imp.validate();
    CHECK(issues.size() == 3);
    bool names_visibility = false;
    for (const std::string &s : issues) {
        names_visibility |= s.find("visibility") != std::string::npos;
    }
    CHECK(names_visibility);
}

TEST_CASE("imperfection fields are addressable by path") {
    ImperfectionModel imp;
    set_imperfection_field(imp, "efficiency", 0.4);
    for (double e : imp.efficiency) {
        CHECK(e == 0.4);
    }
    set_imperfection_field(imp, "efficiency.D3", 0.7);
    CHECK(imp.efficiency[2] == 0.7);
    CHECK(imp.efficiency[0] == 0.4);
    set_imperfection_field(imp, "visibility", 0.5);
    CHECK(imp.visibility == 0.5);
    set_imperfection_field(imp, "dark_count_prob", 0.01);
    CHECK(imp.dark_count_prob == 0.01);
    set_imperfection_field(imp, "prep_angle_error", 0.1);
    CHECK(imp.prep_angle_error == 0.1);
    set_imperfection_field(imp, "arm_phase.s2_d", 0.2);
    CHECK(imp.arm_phases[3] == 0.2);
    set_imperfection_field(imp, "bs_transmittance.s1", 0.6);
    CHECK(imp.bs_transmittance[0] == 0.6);

    CHECK_THROWS_AS(set_imperfection_field(imp, "nonsense", 1.0), ConfigError);
    CHECK(imperfection_field_paths().size() == 18);
}

TEST_CASE("counts are reproducible for any worker count") {
    const ImperfectionModel imp = noisy_point();
    const CountsTable serial =
        run_experiment(Theory::QM, Context::A, imp, 50000, 777, 1);
    for (int threads : {2, 3, 8}) {
        const CountsTable parallel =
            run_experiment(Theory::QM, Context::A, imp, 50000, 777, threads);
        CHECK(same_counts(serial, parallel));
    }
    const CountsTable joint_serial =
        run_experiment(Theory::NCHV, Context::B, imp, 50000, 777, 1);
    const CountsTable joint_parallel =
        run_experiment(Theory::NCHV, Context::B, imp, 50000, 777, 5);
    CHECK(same_counts(joint_serial, joint_parallel));
}

TEST_CASE("counts tables are internally consistent") {
    const CountsTable a = run_experiment(Theory::QM, Context::A, noisy_point(),
                                         20000, 3, 2);
    CHECK(a.is_consistent());
    CHECK(a.trials == 20000);
    const auto detector_sum =
        std::accumulate(a.context_a_counts.begin(), a.context_a_counts.end(),
                        std::uint64_t{0});
    CHECK(detector_sum + a.no_detection_count == a.trials);
    CHECK(a.detected() == detector_sum);
}

TEST_CASE("ideal quantum runs never hit the noncontextual detectors") {
    const CountsTable a =
        run_experiment(Theory::QM, Context::A, {}, 100000, 11, 4);
    CHECK(a.context_a_counts[1] == 0);
    CHECK(a.context_a_counts[2] == 0);
    CHECK(a.context_a_counts[4] == 0);
    CHECK(a.context_a_counts[7] == 0);
    CHECK(a.no_detection_count == 0);

    const CountsTable b =
        run_experiment(Theory::QM, Context::B, {}, 100000, 11, 4);
    CHECK(b.context_b_counts[0] == 100000);
}

TEST_CASE("constrained hidden-variable runs never hit the quantum detectors") {
    const CountsTable a =
        run_experiment(Theory::NCHV, Context::A, {}, 100000, 13, 4);
    CHECK(a.context_a_counts[0] == 0);
    CHECK(a.context_a_counts[3] == 0);
    CHECK(a.context_a_counts[5] == 0);
    CHECK(a.context_a_counts[6] == 0);
}

TEST_CASE("estimates on a hand-built pair of tables") {
    CountsTable a;
    a.context = Context::A;
    a.context_a_counts[1] = 1000; // all clicks at the second detector
    a.trials = 1000;
    CountsTable b;
    b.context = Context::B;
    b.context_b_counts[0] = 1000; // all (+1, +1)
    b.trials = 1000;

    const InequalityReport rep = estimate_averages(a, b);
    CHECK(rep.avg_z1z2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.avg_x1x2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.avg_product == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.lhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.lhs_se == 0.0);
    CHECK(rep.violation_sigma == 0.0);
}

TEST_CASE("estimate_averages rejects swapped or empty inputs") {
    CountsTable a;
    a.context = Context::A;
    a.context_a_counts[0] = 10;
    a.trials = 10;
    CountsTable b;
    b.context = Context::B;
    b.context_b_counts[0] = 10;
    b.trials = 10;
    CHECK_THROWS_AS(estimate_averages(b, a), ConsistencyError);

    CountsTable empty_a;
    empty_a.context = Context::A;
    empty_a.no_detection_count = 10;
    empty_a.trials = 10;
    CHECK_THROWS_AS(estimate_averages(empty_a, b), InsufficientDataError);
}

TEST_CASE("invalid run parameters are rejected before running") {
    ImperfectionModel bad;
    bad.visibility = 2.0;
    CHECK_THROWS_AS(run_experiment(Theory::QM, Context::A, bad, 10, 1),
                    ConfigError);
    CHECK_THROWS_AS(run_experiment(Theory::QM, Context::A, {}, 0, 1),
                    ConfigError);
    CHECK_THROWS_AS(run_experiment(Theory::QM, Context::A, {}, 10, 1, 0),
                    ConfigError);

    AssignmentDistribution broken = AssignmentDistribution::uniform_all();
    broken.weights[0] = 2.0;
    CHECK_THROWS_AS(
        run_experiment(Theory::NCHV, Context::A, {}, 10, 1, 1, &broken),
        ConfigError);
}

TEST_CASE("monte carlo tracks the analytic oracle at a noisy point") {
    const ImperfectionModel imp = noisy_point();
    const std::uint64_t trials = 400000;
    const CountsTable a =
        run_experiment(Theory::QM, Context::A, imp, trials, 2024, 4);
    const CountsTable b =
        run_experiment(Theory::QM, Context::B, imp, trials, 2024, 4);
    const InequalityReport rep = estimate_averages(a, b);
    const AnalyticPrediction oracle = analytic_prediction(Theory::QM, imp);

    CHECK(within(rep.avg_z1z2, oracle.avg_z1z2, rep.se_z1z2));
    CHECK(within(rep.avg_x1x2, oracle.avg_x1x2, rep.se_x1x2));
    CHECK(within(rep.avg_product, oracle.avg_product, rep.se_product));
    CHECK(within(rep.lhs, oracle.lhs, rep.lhs_se));
}

TEST_CASE("oracle detector probabilities match observed frequencies") {
    const ImperfectionModel imp = noisy_point();
    const std::uint64_t trials = 400000;
    const CountsTable a =
        run_experiment(Theory::QM, Context::A, imp, trials, 515, 4);
    const AnalyticPrediction oracle = analytic_prediction(Theory::QM, imp);
    for (int k = 0; k < kNumDetectors; ++k) {
        const double p = oracle.detector_probs[k];
        const double freq =
            static_cast<double>(a.context_a_counts[k]) / trials;
        const double se = std::sqrt(p * (1.0 - p) / trials);
        CHECK(within(freq, p, se));
    }
    const double nd_freq =
        static_cast<double>(a.no_detection_count) / trials;
    const double nd = oracle.no_detection_prob_a;
    CHECK(within(nd_freq, nd, std::sqrt(nd * (1.0 - nd) / trials)));
}

TEST_CASE("the hidden-variable model never significantly beats its bound") {
    AssignmentDistribution lopsided = AssignmentDistribution::uniform_all();
    for (int i = 0; i < kNumAssignments; ++i) {
        lopsided.weights[i] = (i + 1.0);
    }
    const double total =
        std::accumulate(lopsided.weights.begin(), lopsided.weights.end(), 0.0);
    for (double &w : lopsided.weights) {
        w /= total;
    }

    const AssignmentDistribution dists[] = {
        AssignmentDistribution::uniform_constrained(),
        AssignmentDistribution::uniform_all(),
        AssignmentDistribution::point_mass({+1, +1, +1, +1}),
        lopsided,
    };
    const std::uint64_t trials = 10000;
    std::uint64_t seed = 90210;
    for (const AssignmentDistribution &dist : dists) {
        const CountsTable a = run_experiment(Theory::NCHV, Context::A, {},
                                             trials, seed, 2, &dist);
        const CountsTable b = run_experiment(Theory::NCHV, Context::B, {},
                                             trials, seed, 2, &dist);
        const InequalityReport rep = estimate_averages(a, b);
        CHECK(rep.lhs <= 2.0 + 4.0 * rep.lhs_se + 1e-12);
        CHECK(rep.lhs >= 0.0);
        CHECK(rep.lhs <= 4.0);
        CHECK(std::abs(rep.avg_z1z2) <= 1.0 + 1e-12);
        CHECK(std::abs(rep.avg_x1x2) <= 1.0 + 1e-12);
        CHECK(std::abs(rep.avg_product) <= 1.0 + 1e-12);
        seed += 1;
    }
}

TEST_CASE("uniform loss leaves the conditional oracle unchanged") {
    ImperfectionModel lossy;
    for (double &e : lossy.efficiency) {
        e = 0.1;
    }
    const AnalyticPrediction ideal = analytic_prediction(Theory::QM, {});
    const AnalyticPrediction attenuated =
        analytic_prediction(Theory::QM, lossy);
    CHECK(std::abs(ideal.avg_z1z2 - attenuated.avg_z1z2) < 1e-12);
    CHECK(std::abs(ideal.avg_x1x2 - attenuated.avg_x1x2) < 1e-12);
    CHECK(std::abs(ideal.avg_product - attenuated.avg_product) < 1e-12);
    CHECK(std::abs(ideal.lhs - attenuated.lhs) < 1e-12);
    CHECK(std::abs(attenuated.no_detection_prob_a - 0.9) < 1e-12);
}

TEST_CASE("dark counts degrade the violation monotonically") {
    const double rates[] = {0.0, 1e-4, 1e-3, 1e-2, 0.1};
    const std::uint64_t trials = 1000000;
    double previous_lhs = 5.0;
    double previous_se = 0.0;
    double previous_analytic = 5.0;
    for (double q : rates) {
        ImperfectionModel imp;
        imp.dark_count_prob = q;
        const AnalyticPrediction oracle = analytic_prediction(Theory::QM, imp);
        CHECK(oracle.lhs <= previous_analytic + 1e-12);

        const CountsTable a =
            run_experiment(Theory::QM, Context::A, imp, trials, 60601, 4);
        const CountsTable b =
            run_experiment(Theory::QM, Context::B, imp, trials, 60601, 4);
        const InequalityReport rep = estimate_averages(a, b);
        const double combined =
            std::sqrt(rep.lhs_se * rep.lhs_se + previous_se * previous_se);
        CHECK(rep.lhs <= previous_lhs + 4.0 * combined + 1e-12);
        CHECK(within(rep.lhs, oracle.lhs, rep.lhs_se));

        previous_lhs = rep.lhs;
        previous_se = rep.lhs_se;
        previous_analytic = oracle.lhs;
    }
}

TEST_CASE("without fair sampling the oracle still matches monte carlo") {
    ImperfectionModel imp;
    for (double &e : imp.efficiency) {
        e = 0.5;
    }
    const std::uint64_t trials = 400000;
    const CountsTable a =
        run_experiment(Theory::QM, Context::A, imp, trials, 40, 4);
    const CountsTable b =
        run_experiment(Theory::QM, Context::B, imp, trials, 40, 4);
    const InequalityReport rep = estimate_averages(a, b, false);
    const AnalyticPrediction oracle =
        analytic_prediction(Theory::QM, imp, false);
    CHECK(within(rep.avg_z1z2, oracle.avg_z1z2, rep.se_z1z2));
    CHECK(within(rep.avg_x1x2, oracle.avg_x1x2, rep.se_x1x2));
    CHECK(within(rep.avg_product, oracle.avg_product, rep.se_product));
    CHECK(within(rep.lhs, oracle.lhs, rep.lhs_se));
    CHECK(oracle.lhs == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("sweep applies the parameter point by point") {
    const std::vector<double> values{0.0, 0.5, 1.0};
    const auto points = sweep(Theory::QM, {}, "visibility", values, 50000,
                              31337, 2);
    REQUIRE(points.size() == 3);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].parameter == "visibility");
        CHECK(points[i].value == values[i]);
        CHECK(points[i].analytic_lhs ==
              doctest::Approx(2.0 + 2.0 * values[i]).epsilon(1e-12));
        CHECK(within(points[i].report.lhs, points[i].analytic_lhs,
                     points[i].report.lhs_se));
    }

    const auto again = sweep(Theory::QM, {}, "visibility", values, 50000,
                             31337, 4);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(same_counts(points[i].counts_a, again[i].counts_a));
        CHECK(same_counts(points[i].counts_b, again[i].counts_b));
    }
}

TEST_CASE("sweep rejects unknown parameters and accepts empty value lists") {
    CHECK_THROWS_AS(sweep(Theory::QM, {}, "bogus", {0.1}, 10, 1), ConfigError);
    CHECK(sweep(Theory::QM, {}, "visibility", {}, 10, 1).empty());
}

TEST_CASE("merge accumulates and guards context") {
    CountsTable a1;
    a1.context = Context::A;
    a1.context_a_counts[0] = 5;
    a1.trials = 5;
    CountsTable a2 = a1;
    a1.merge(a2);
    CHECK(a1.context_a_counts[0] == 10);
    CHECK(a1.trials == 10);

    CountsTable b;
    b.context = Context::B;
    CHECK_THROWS_AS(a1.merge(b), ConsistencyError);
}

TEST_CASE("enum names") {
    CHECK(to_string(Theory::QM) == "QM");
    CHECK(to_string(Theory::NCHV) == "NCHV");
    CHECK(to_string(Context::A) == "A");
    CHECK(to_string(Context::B) == "B");
}
