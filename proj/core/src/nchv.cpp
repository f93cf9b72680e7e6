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

#include "photonctx/nchv.hpp"

#include <algorithm>
#include <cmath>

#include "photonctx/errors.hpp"

namespace photonctx {

namespace {

std::string sign_str(int v) { return v > 0 ? "+1" : "-1"; }

} // namespace

std::string to_string(const ValueAssignment &a) {
    return "(z1 x1 z2 x2) = (" + sign_str(a.z1) + " " + sign_str(a.x1) + " " +
           sign_str(a.z2) + " " + sign_str(a.x2) + ")";
}

std::array<ValueAssignment, kNumAssignments> enumerate_assignments() {
    std::array<ValueAssignment, kNumAssignments> all;
    for (int i = 0; i < kNumAssignments; ++i) {
        all[i].z1 = (i & 8) ? -1 : +1;
        all[i].x1 = (i & 4) ? -1 : +1;
        all[i].z2 = (i & 2) ? -1 : +1;
        all[i].x2 = (i & 1) ? -1 : +1;
    }
    return all;
}

int assignment_index(const ValueAssignment &a) {
    return (a.z1 < 0 ? 8 : 0) | (a.x1 < 0 ? 4 : 0) | (a.z2 < 0 ? 2 : 0) |
           (a.x2 < 0 ? 1 : 0);
}

int c_value(const ValueAssignment &a) {
    return 1 + a.z1 * a.z2 + a.x1 * a.x2 - a.z1 * a.x2 * a.x1 * a.z2;
}

int max_c_value() {
    int best = c_value(enumerate_assignments()[0]);
    for (const ValueAssignment &a : enumerate_assignments()) {
        best = std::max(best, c_value(a));
    }
    return best;
}

ConstraintFlags check_constraints(const ValueAssignment &a) {
    ConstraintFlags f;
    f.eq_a = a.z1 * a.z2 == +1;
    f.eq_b = a.x1 * a.x2 == +1;
    f.eq_c = a.z1 * a.x2 == -(a.x1 * a.z2);
    return f;
}

ContradictionProof contradiction_proof() {
    ContradictionProof proof;
    for (const ValueAssignment &a : enumerate_assignments()) {
        if (check_constraints(a).all()) {
            proof.satisfying.push_back(a);
        }
    }
    // Multiply the three constraints: the left sides contain every value
    // exactly twice, the right sides are +1, +1, -1.
    proof.lhs_product = +1;
    proof.rhs_product = -1;
    proof.argument =
        "Multiplying the three constraints v(Z1)v(Z2) = +1, "
        "v(X1)v(X2) = +1, v(Z1)v(X2)v(X1)v(Z2) = -1 gives "
        "[v(Z1)v(X1)v(Z2)v(X2)]^2 on the left, which is +1 for any +-1 "
        "values, while the right sides multiply to -1. Hence no assignment "
        "satisfies all three, as the exhaustive check confirms.";
    return proof;
}

DetectorId assignment_to_detector(const ValueAssignment &a) {
    const int group = (a.z1 * a.x2 == -1) ? 0 : 4; // D1-D4 vs D5-D8
    const int port = (a.x1 == +1) ? 0 : 2;         // upper vs lower output
    const int pol = (a.z2 == +1) ? 0 : 1;          // odd vs even detector
    return static_cast<DetectorId>(group + port + pol);
}

AssignmentDistribution AssignmentDistribution::uniform_constrained() {
    AssignmentDistribution dist;
    for (const ValueAssignment &a : enumerate_assignments()) {
        const ConstraintFlags f = check_constraints(a);
        if (f.eq_a && f.eq_b) {
            dist.weights[assignment_index(a)] = 0.25;
        }
    }
    return dist;
}

AssignmentDistribution AssignmentDistribution::uniform_all() {
    AssignmentDistribution dist;
    dist.weights.fill(1.0 / kNumAssignments);
    return dist;
}

AssignmentDistribution
AssignmentDistribution::point_mass(const ValueAssignment &a) {
    AssignmentDistribution dist;
    dist.weights[assignment_index(a)] = 1.0;
    return dist;
}

bool AssignmentDistribution::is_normalized(double tol) const {
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            return false;
        }
        sum += w;
    }
    return std::abs(sum - 1.0) <= tol;
}

std::array<double, kNumAssignments> AssignmentDistribution::cumulative() const {
    std::array<double, kNumAssignments> cdf{};
    double sum = 0.0;
    for (int i = 0; i < kNumAssignments; ++i) {
        sum += weights[i];
        cdf[i] = sum;
    }
    return cdf;
}

double AssignmentDistribution::mean_z1z2() const {
    double m = 0.0;
    const auto all = enumerate_assignments();
    for (int i = 0; i < kNumAssignments; ++i) {
        m += weights[i] * all[i].z1 * all[i].z2;
    }
    return m;
}

double AssignmentDistribution::mean_x1x2() const {
    double m = 0.0;
    const auto all = enumerate_assignments();
    for (int i = 0; i < kNumAssignments; ++i) {
        m += weights[i] * all[i].x1 * all[i].x2;
    }
    return m;
}

double AssignmentDistribution::mean_product() const {
    double m = 0.0;
    const auto all = enumerate_assignments();
    for (int i = 0; i < kNumAssignments; ++i) {
        m += weights[i] * all[i].z1 * all[i].x2 * all[i].x1 * all[i].z2;
    }
    return m;
}

ValueAssignment sample_assignment(const AssignmentDistribution &dist,
                                  PhiloxRng &rng) {
    if (!dist.is_normalized()) {
        throw NormalizationError(
            "assignment distribution weights must be nonnegative and sum to 1");
    }
    const auto cdf = dist.cumulative();
    const double u = rng.next_double();
    for (int i = 0; i < kNumAssignments; ++i) {
        if (u < cdf[i]) {
            return enumerate_assignments()[i];
        }
    }
    return enumerate_assignments()[kNumAssignments - 1];
}

} // namespace photonctx
