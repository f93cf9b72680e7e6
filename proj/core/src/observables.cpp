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

#include "photonctx/observables.hpp"

#include <cmath>

#include "photonctx/nchv.hpp"

namespace photonctx {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

const Frame kCanonicalFrame{PathFrame::Primary, PolFrame::Rectilinear};

Mat2c pauli_z() {
    Mat2c m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Mat2c pauli_x() {
    Mat2c m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat4c kron(const Mat2c &path, const Mat2c &pol) {
    Mat4c out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = path(i, j) * pol;
        }
    }
    return out;
}

Mat4c observable_matrix(ObservableName name) {
    const Mat2c id = Mat2c::Identity();
    switch (name) {
    case ObservableName::Z1:
        return kron(pauli_z(), id);
    case ObservableName::X1: {
        // Output-port parity behind a balanced splitter, pulled back:
        // S^T (sigma_z) S with S the balanced splitter map, which is the
        // path exchange sigma_x.
        const Mat2c s = splitter_matrix(0.5);
        return kron(s.adjoint() * pauli_z() * s, id);
    }
    case ObservableName::Z2:
        return kron(id, pauli_z());
    case ObservableName::X2: {
        // Diagonal-basis polarization parity: conjugate sigma_z by the
        // diagonal <-> rectilinear change, giving the H/V exchange.
        const Mat2c r = diag_rect_change();
        return kron(id, r * pauli_z() * r.adjoint());
    }
    case ObservableName::Z1Z2:
        return observable_matrix(ObservableName::Z1) *
               observable_matrix(ObservableName::Z2);
    case ObservableName::X1X2:
        return observable_matrix(ObservableName::X1) *
               observable_matrix(ObservableName::X2);
    case ObservableName::Z1X2:
        return observable_matrix(ObservableName::Z1) *
               observable_matrix(ObservableName::X2);
    case ObservableName::X1Z2:
        return observable_matrix(ObservableName::X1) *
               observable_matrix(ObservableName::Z2);
    case ObservableName::Z1X2_X1Z2:
        return observable_matrix(ObservableName::Z1X2) *
               observable_matrix(ObservableName::X1Z2);
    }
    throw Error("unknown observable name");
}

} // namespace

std::string to_string(ObservableName name) {
    switch (name) {
    case ObservableName::Z1:
        return "Z1";
    case ObservableName::X1:
        return "X1";
    case ObservableName::Z2:
        return "Z2";
    case ObservableName::X2:
        return "X2";
    case ObservableName::Z1Z2:
        return "Z1Z2";
    case ObservableName::X1X2:
        return "X1X2";
    case ObservableName::Z1X2:
        return "Z1X2";
    case ObservableName::X1Z2:
        return "X1Z2";
    case ObservableName::Z1X2_X1Z2:
        return "Z1X2.X1Z2";
    }
    throw Error("unknown observable name");
}

Operator4 make_observable(ObservableName name) {
    return Operator4{observable_matrix(name), kCanonicalFrame};
}

Operator4 combination_operator() {
    Mat4c c = Mat4c::Identity() + observable_matrix(ObservableName::Z1Z2) +
              observable_matrix(ObservableName::X1X2) -
              observable_matrix(ObservableName::Z1X2_X1Z2);
    return Operator4{c, kCanonicalFrame};
}

PhotonState correlated_state() {
    PhotonState psi;
    psi.frame = kCanonicalFrame;
    psi.amps << kInvSqrt2, 0.0, 0.0, kInvSqrt2;
    return psi;
}

PhotonState source_state() {
    PhotonState psi;
    psi.frame = {PathFrame::Source, PolFrame::Rectilinear};
    psi.amps << kInvSqrt2, kInvSqrt2, 0.0, 0.0;
    return psi;
}

EigenstateReport verify_eigenstate_relations(const PhotonState &state) {
    detail::require_normalized(state, "state");
    if (state.frame != kCanonicalFrame) {
        throw FrameMismatchError(
            "eigenstate relations are defined in the (u/d, rectilinear) "
            "frame, got " +
            to_string(state.frame));
    }
    EigenstateReport rep;
    const Vec4c &psi = state.amps;
    rep.z1z2_residual =
        (observable_matrix(ObservableName::Z1Z2) * psi - psi).norm();
    rep.x1x2_residual =
        (observable_matrix(ObservableName::X1X2) * psi - psi).norm();
    rep.anticorrelation_residual =
        (observable_matrix(ObservableName::Z1X2) * psi +
         observable_matrix(ObservableName::X1Z2) * psi)
            .norm();
    return rep;
}

DetectorValues detector_values(DetectorId d) {
    static constexpr std::array<int, kNumDetectors> kZ1X2 = {-1, -1, -1, -1,
                                                             +1, +1, +1, +1};
    static constexpr std::array<int, kNumDetectors> kX1Z2 = {+1, -1, -1, +1,
                                                             +1, -1, -1, +1};
    const int k = static_cast<int>(d);
    return DetectorValues{kZ1X2[k], kX1Z2[k], kZ1X2[k] * kX1Z2[k]};
}

namespace {

MeasurementContext make_context(std::string name, ObservableName first,
                                ObservableName second) {
    MeasurementContext ctx;
    ctx.name = std::move(name);
    ctx.first = first;
    ctx.second = second;
    ctx.outcomes = {{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
    const Mat4c a = observable_matrix(first);
    const Mat4c b = observable_matrix(second);
    const Mat4c id = Mat4c::Identity();
    for (int k = 0; k < 4; ++k) {
        const double va = ctx.outcomes[k].first;
        const double vb = ctx.outcomes[k].second;
        ctx.projectors[k] = 0.25 * (id + va * a) * (id + vb * b);
    }
    return ctx;
}

} // namespace

MeasurementContext make_context_a() {
    return make_context("A", ObservableName::Z1X2, ObservableName::X1Z2);
}

MeasurementContext make_context_b() {
    return make_context("B", ObservableName::Z1Z2, ObservableName::X1X2);
}

std::pair<int, int> context_b_outcome_values(int k) {
    static constexpr std::array<std::pair<int, int>, 4> kOutcomes = {
        {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
    return kOutcomes[k];
}

std::array<double, 4> context_b_measure(const PhotonState &state) {
    detail::require_normalized(state, "state");
    if (state.frame != kCanonicalFrame) {
        throw FrameMismatchError(
            "the joint Z1Z2/X1X2 measurement is defined in the "
            "(u/d, rectilinear) frame, got " +
            to_string(state.frame));
    }
    const MeasurementContext ctx = make_context_b();
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k) {
        const Complex p = state.amps.dot(ctx.projectors[k] * state.amps);
        if (std::abs(p.imag()) > kConsistencyTol) {
            throw ConsistencyError("projector expectation has imaginary part " +
                                   std::to_string(p.imag()));
        }
        probs[k] = std::max(0.0, p.real());
    }
    return probs;
}

ObservableBounds observable_bounds() {
    ObservableBounds bounds;
    bounds.nchv_max = static_cast<double>(max_c_value());
    const Mat4c c = combination_operator().m;
    Eigen::SelfAdjointEigenSolver<Mat4c> solver(c);
    // Eigenvalues come out in increasing order.
    bounds.qm_max = solver.eigenvalues()(3);
    bounds.qm_argmax = solver.eigenvectors().col(3);
    return bounds;
}

} // namespace photonctx
