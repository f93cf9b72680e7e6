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
 * The four dichotomic observables of the interferometric test and their
 * products, the two joint measurement contexts, the eigenstate relations
 * that single out the maximally correlated state, and the detector-to-value
 * map of the standard network.
 *
 * All operators are expressed in one common frame, (Primary, Rectilinear):
 * Z1 and X1 act on the path factor, Z2 and X2 on the polarization factor.
 * X1 is defined operationally behind a balanced splitter ("which output
 * port"), pulled back through the splitter map into the primary frame,
 * where it becomes the plain path-exchange operator.
 */

#pragma once

#include <array>
#include <string>
#include <utility>

#include "photonctx/hilbert.hpp"
#include "photonctx/optics.hpp"

namespace photonctx {

enum class ObservableName {
    Z1,        ///< path in the primary frame: +1 on u, -1 on d
    X1,        ///< splitter output port, pulled back: path exchange
    Z2,        ///< rectilinear polarization: +1 on H, -1 on V
    X2,        ///< diagonal polarization: +1 on +45, -1 on -45
    Z1Z2,      ///< product, context-B first observable
    X1X2,      ///< product, context-B second observable
    Z1X2,      ///< product, context-A first observable
    X1Z2,      ///< product, context-A second observable
    Z1X2_X1Z2, ///< the commuting context-A product of products
};

std::string to_string(ObservableName name);

/// The named operator in the (Primary, Rectilinear) frame. Every result is
/// Hermitian, squares to the identity, and has spectrum {+1, -1}.
Operator4 make_observable(ObservableName name);

/// C = I + Z1Z2 + X1X2 - Z1X2*X1Z2, the combination whose mean separates
/// the two theories (noncontextual value range {+2, -2}; quantum maximum 4).
Operator4 combination_operator();

/// The maximally path-polarization-correlated state (|uH> + |dV>)/sqrt(2)
/// in the (Primary, Rectilinear) frame.
PhotonState correlated_state();

/// The standard source preparation |a>|+45deg> in source-frame rectilinear
/// coordinates: (1,1,0,0)/sqrt(2).
PhotonState source_state();

/// Residual norms of the three defining relations of the correlated state:
///   Z1Z2 |psi> = |psi>,  X1X2 |psi> = |psi>,  Z1X2 |psi> = -X1Z2 |psi>.
struct EigenstateReport {
    double z1z2_residual = 0.0;
    double x1x2_residual = 0.0;
    double anticorrelation_residual = 0.0;

    bool z1z2_ok() const { return z1z2_residual <= kAlgebraTol; }
    bool x1x2_ok() const { return x1x2_residual <= kAlgebraTol; }
    bool anticorrelation_ok() const {
        return anticorrelation_residual <= kAlgebraTol;
    }
    bool all_ok() const { return z1z2_ok() && x1x2_ok() && anticorrelation_ok(); }
};

/// Evaluate the three relations on a normalized (Primary, Rectilinear)
/// state. Throws NormalizationError / FrameMismatchError on bad input.
EigenstateReport verify_eigenstate_relations(const PhotonState &state);

/// The joint values revealed by a click at one detector.
struct DetectorValues {
    int z1x2;
    int x1z2;
    int product; ///< always z1x2 * x1z2
};

/// The fixed detector-to-value map of the standard network:
///   detector   D1  D2  D3  D4  D5  D6  D7  D8
///   Z1X2       -1  -1  -1  -1  +1  +1  +1  +1
///   X1Z2       +1  -1  -1  +1  +1  -1  -1  +1
///   product    -1  +1  +1  -1  +1  -1  -1  +1
DetectorValues detector_values(DetectorId d);

/// A pair of commuting dichotomic observables measured jointly. The four
/// joint eigenspaces are one-dimensional; projectors are orthogonal,
/// idempotent, and sum to the identity.
struct MeasurementContext {
    std::string name;
    ObservableName first;
    ObservableName second;
    /// Joint (first, second) outcome values, fixed order:
    /// (+1,+1), (+1,-1), (-1,+1), (-1,-1).
    std::array<std::pair<int, int>, 4> outcomes;
    std::array<Mat4c, 4> projectors;
};

/// Context A: {Z1X2, X1Z2}, realized physically by the standard network.
MeasurementContext make_context_a();

/// Context B: {Z1Z2, X1X2}, realized abstractly (the auxiliary apparatus
/// is left unspecified by the scheme; a projective measurement in the
/// common eigenbasis is the minimal faithful model).
MeasurementContext make_context_b();

/// Joint (z1z2, x1x2) values of context-B outcome index k in the fixed
/// order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
std::pair<int, int> context_b_outcome_values(int k);

/// Born probabilities of the four context-B outcomes for a normalized
/// (Primary, Rectilinear) state, in the fixed outcome order. Sums to 1
/// within kAlgebraTol.
std::array<double, 4> context_b_measure(const PhotonState &state);

struct ObservableBounds {
    double nchv_max; ///< 2, by exhaustive value-assignment enumeration
    double qm_max;   ///< largest eigenvalue of the combination operator
    Vec4c qm_argmax; ///< corresponding eigenvector (unit norm)
};

ObservableBounds observable_bounds();

} // namespace photonctx
