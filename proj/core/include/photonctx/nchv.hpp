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
 * The rival noncontextual theory: a hidden state is a predefined +-1 value
 * for each of Z1, X1, Z2, X2, independent of measurement context. This
 * module enumerates the 16 possible assignments, evaluates the combination
 * C on them, checks the three value constraints whose joint satisfaction
 * is provably impossible, maps each assignment to the detector it must
 * reach, and samples assignments for Monte Carlo runs.
 */

#pragma once

#include <array>
#include <string>
#include <vector>

#include "photonctx/optics.hpp"
#include "photonctx/rng.hpp"

namespace photonctx {

/// One hidden state: predefined values v(Z1), v(X1), v(Z2), v(X2).
struct ValueAssignment {
    int z1 = +1;
    int x1 = +1;
    int z2 = +1;
    int x2 = +1;

    friend bool operator==(const ValueAssignment &,
                           const ValueAssignment &) = default;
};

/// "(z1 x1 z2 x2) = (+1 -1 ...)" for reports and error messages.
std::string to_string(const ValueAssignment &a);

inline constexpr int kNumAssignments = 16;

/// All 16 assignments in canonical order: index bits (3,2,1,0) encode
/// (z1, x1, z2, x2), bit 0 meaning +1 and bit 1 meaning -1, so index 0 is
/// (+1,+1,+1,+1) and index 15 is (-1,-1,-1,-1).
std::array<ValueAssignment, kNumAssignments> enumerate_assignments();

/// Canonical index of an assignment (inverse of enumerate_assignments).
int assignment_index(const ValueAssignment &a);

/// C evaluated on a hidden state:
///   1 + v(Z1)v(Z2) + v(X1)v(X2) - v(Z1)v(X2)v(X1)v(Z2).
/// Always +2 or -2.
int c_value(const ValueAssignment &a);

/// Largest C over all assignments; the noncontextual bound of the
/// inequality. Equals 2.
int max_c_value();

/// The three constraints a noncontextual state would have to satisfy to
/// reproduce the quantum predictions for the correlated state:
///   (a) v(Z1)v(Z2) = +1, (b) v(X1)v(X2) = +1, (c) v(Z1)v(X2) = -v(X1)v(Z2).
struct ConstraintFlags {
    bool eq_a = false;
    bool eq_b = false;
    bool eq_c = false;

    bool all() const { return eq_a && eq_b && eq_c; }
};

ConstraintFlags check_constraints(const ValueAssignment &a);

/// Exhaustive impossibility witness: the set of assignments satisfying all
/// three constraints (empty), together with the parity argument - the
/// product of the three left-hand sides is identically +1 while the
/// product of the right-hand sides is -1.
struct ContradictionProof {
    std::vector<ValueAssignment> satisfying; ///< always empty
    int lhs_product;                         ///< +1
    int rhs_product;                         ///< -1
    std::string argument;
};

ContradictionProof contradiction_proof();

/// The detector a photon in hidden state `a` must reach: v(Z1)v(X2) picks
/// the splitter group (-1: D1-D4, +1: D5-D8), v(X1) the output port within
/// the group (+1: upper, -1: lower), v(Z2) the polarization port (+1: odd
/// detector, -1: even). By construction detector_values(result) equals
/// (v(Z1)v(X2), v(X1)v(Z2), product).
DetectorId assignment_to_detector(const ValueAssignment &a);

/// Probability weights over the 16 assignments in canonical order.
struct AssignmentDistribution {
    std::array<double, kNumAssignments> weights{};

    /// Uniform over the 4 assignments with v(Z1)v(Z2) = v(X1)v(X2) = +1
    /// (the ensemble the experiment prepares, as seen by the rival theory).
    static AssignmentDistribution uniform_constrained();
    static AssignmentDistribution uniform_all();
    static AssignmentDistribution point_mass(const ValueAssignment &a);

    bool is_normalized(double tol = kAlgebraTol) const;
    std::array<double, kNumAssignments> cumulative() const;

    /// Exact ensemble means of the three inequality terms.
    double mean_z1z2() const;
    double mean_x1x2() const;
    double mean_product() const;
};

/// Draw one assignment. Throws NormalizationError for an unnormalized
/// distribution. Deterministic given the generator state.
ValueAssignment sample_assignment(const AssignmentDistribution &dist,
                                  PhiloxRng &rng);

} // namespace photonctx
