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

#include <array>
#include <cmath>
#include <random>

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "photonctx/errors.hpp"
#include "photonctx/hilbert.hpp"
#include "photonctx/observables.hpp"
#include "photonctx/optics.hpp"

using namespace photonctx;

namespace {

PhotonState random_primary_state(std::mt19937 &gen) {
    std::normal_distribution<double> n;
    PhotonState s;
    for (int i = 0; i < 4; ++i) {
        s.amps(i) = Complex(n(gen), n(gen));
    }
    s.amps.normalize();
    s.frame = Frame{PathFrame::Primary, PolFrame::Rectilinear};
    return s;
}

constexpr ObservableName kAllNames[] = {
    ObservableName::Z1,   ObservableName::X1,        ObservableName::Z2,
    ObservableName::X2,   ObservableName::Z1Z2,      ObservableName::X1X2,
    ObservableName::Z1X2, ObservableName::X1Z2,      ObservableName::Z1X2_X1Z2,
};

} // namespace

TEST_CASE("frozen matrices of the product observables") {
    const Mat4c z1z2 = make_observable(ObservableName::Z1Z2).m;
    Mat4c expect = Mat4c::Zero();
    expect.diagonal() << 1.0, -1.0, -1.0, 1.0;
    CHECK((z1z2 - expect).norm() < kAlgebraTol);

    const Mat4c x1x2 = make_observable(ObservableName::X1X2).m;
    expect = Mat4c::Zero();
    expect(0, 3) = expect(1, 2) = expect(2, 1) = expect(3, 0) = 1.0;
    CHECK((x1x2 - expect).norm() < kAlgebraTol);

    const Mat4c z1x2 = make_observable(ObservableName::Z1X2).m;
    expect = Mat4c::Zero();
    expect(0, 1) = expect(1, 0) = 1.0;
    expect(2, 3) = expect(3, 2) = -1.0;
    CHECK((z1x2 - expect).norm() < kAlgebraTol);

    const Mat4c x1z2 = make_observable(ObservableName::X1Z2).m;
    expect = Mat4c::Zero();
    expect(0, 2) = expect(2, 0) = 1.0;
    expect(1, 3) = expect(3, 1) = -1.0;
    CHECK((x1z2 - expect).norm() < kAlgebraTol);

    const Mat4c prod = make_observable(ObservableName::Z1X2_X1Z2).m;
    expect = Mat4c::Zero();
    expect(0, 3) = expect(3, 0) = -1.0;
    expect(1, 2) = expect(2, 1) = 1.0;
    CHECK((prod - expect).norm() < kAlgebraTol);
    CHECK((prod - z1x2 * x1z2).norm() < kAlgebraTol);
    CHECK((prod - x1z2 * z1x2).norm() < kAlgebraTol);
}

TEST_CASE("every named observable is Hermitian, squares to identity, and "
          "has the doubly degenerate unit spectrum") {
    for (ObservableName name : kAllNames) {
        const Operator4 op = make_observable(name);
        CHECK(op.is_hermitian());
        CHECK((op.m * op.m - Mat4c::Identity()).norm() < kAlgebraTol);
        Eigen::SelfAdjointEigenSolver<Mat4c> solver(op.m);
        const auto ev = solver.eigenvalues();
        CHECK(std::abs(ev(0) + 1.0) < kAlgebraTol);
        CHECK(std::abs(ev(1) + 1.0) < kAlgebraTol);
        CHECK(std::abs(ev(2) - 1.0) < kAlgebraTol);
        CHECK(std::abs(ev(3) - 1.0) < kAlgebraTol);
    }
}

TEST_CASE("context members commute; the path factors anticommute") {
    const Mat4c z1z2 = make_observable(ObservableName::Z1Z2).m;
    const Mat4c x1x2 = make_observable(ObservableName::X1X2).m;
    const Mat4c z1x2 = make_observable(ObservableName::Z1X2).m;
    const Mat4c x1z2 = make_observable(ObservableName::X1Z2).m;
    CHECK((z1z2 * x1x2 - x1x2 * z1z2).norm() < kAlgebraTol);
    CHECK((z1x2 * x1z2 - x1z2 * z1x2).norm() < kAlgebraTol);

    const Mat4c z1 = make_observable(ObservableName::Z1).m;
    const Mat4c x1 = make_observable(ObservableName::X1).m;
    CHECK((z1 * x1 - x1 * z1).norm() > 1.0);
    CHECK((z1 * x1 + x1 * z1).norm() == 0.0);
}

TEST_CASE("the correlated state satisfies all three eigenstate relations") {
    const EigenstateReport rep =
        verify_eigenstate_relations(correlated_state());
    CHECK(rep.z1z2_residual < 1e-12);
    CHECK(rep.x1x2_residual < 1e-12);
    CHECK(rep.anticorrelation_residual < 1e-12);
    CHECK(rep.all_ok());
}

TEST_CASE("detector value map matches the joint-measurement table") {
    const int z1x2[8] = {-1, -1, -1, -1, +1, +1, +1, +1};
    const int x1z2[8] = {+1, -1, -1, +1, +1, -1, -1, +1};
    for (int k = 0; k < kNumDetectors; ++k) {
        const DetectorValues v =
            detector_values(static_cast<DetectorId>(k));
        CHECK(v.z1x2 == z1x2[k]);
        CHECK(v.x1z2 == x1z2[k]);
        CHECK(v.product == z1x2[k] * x1z2[k]);
    }
    CHECK(detector_values(DetectorId::D1).z1x2 == -1);
    CHECK(detector_values(DetectorId::D1).x1z2 == +1);
    CHECK(detector_values(DetectorId::D1).product == -1);
    CHECK(detector_values(DetectorId::D8).z1x2 == +1);
    CHECK(detector_values(DetectorId::D8).x1z2 == +1);
    CHECK(detector_values(DetectorId::D8).product == +1);
}

TEST_CASE("detectors reached by the source state carry product -1, the "
          "others +1") {
    const auto probs =
        propagate(build_fig1_network(), source_state()).probabilities();
    for (int k = 0; k < kNumDetectors; ++k) {
        const DetectorValues v =
            detector_values(static_cast<DetectorId>(k));
        if (probs[k] > 1e-12) {
            CHECK(v.product == -1);
        } else {
            CHECK(v.product == +1);
        }
    }
}

TEST_CASE("network propagation reproduces the Born expectations") {
    const OpticalNetwork net = build_fig1_network();
    const Operator4 oz1x2 = make_observable(ObservableName::Z1X2);
    const Operator4 ox1z2 = make_observable(ObservableName::X1Z2);
    const Operator4 oprod = make_observable(ObservableName::Z1X2_X1Z2);

    std::mt19937 gen(20260817);
    for (int i = 0; i < 100; ++i) {
        const PhotonState s = random_primary_state(gen);
        const auto probs = propagate_primary(net, s).probabilities();
        double m_z1x2 = 0.0, m_x1z2 = 0.0, m_prod = 0.0;
        for (int k = 0; k < kNumDetectors; ++k) {
            const DetectorValues v =
                detector_values(static_cast<DetectorId>(k));
            m_z1x2 += probs[k] * v.z1x2;
            m_x1z2 += probs[k] * v.x1z2;
            m_prod += probs[k] * v.product;
        }
        CHECK(std::abs(m_z1x2 - expectation(oz1x2, s)) < 1e-12);
        CHECK(std::abs(m_x1z2 - expectation(ox1z2, s)) < 1e-12);
        CHECK(std::abs(m_prod - expectation(oprod, s)) < 1e-12);
    }
}

TEST_CASE("detector modes are joint eigenvectors of the context-A pair") {
    const auto m = primary_transfer_matrix(build_fig1_network());
    const Mat4c z1x2 = make_observable(ObservableName::Z1X2).m;
    const Mat4c x1z2 = make_observable(ObservableName::X1Z2).m;
    Mat4c sum_z = Mat4c::Zero();
    Mat4c sum_x = Mat4c::Zero();
    for (int k = 0; k < kNumDetectors; ++k) {
        const Vec4c mode = m.row(k).adjoint();
        const DetectorValues v = detector_values(static_cast<DetectorId>(k));
        sum_z += static_cast<double>(v.z1x2) * mode * mode.adjoint();
        sum_x += static_cast<double>(v.x1z2) * mode * mode.adjoint();
    }
    CHECK((sum_z - z1x2).norm() < 1e-12);
    CHECK((sum_x - x1z2).norm() < 1e-12);
}

TEST_CASE("joint context measurement on reference states") {
    const auto on_correlated = context_b_measure(correlated_state());
    CHECK(std::abs(on_correlated[0] - 1.0) < kAlgebraTol);
    CHECK(std::abs(on_correlated[1]) < kAlgebraTol);
    CHECK(std::abs(on_correlated[2]) < kAlgebraTol);
    CHECK(std::abs(on_correlated[3]) < kAlgebraTol);

    const PhotonState uh = basis_state(
        PathMode::U, PolAxis::H,
        Frame{PathFrame::Primary, PolFrame::Rectilinear});
    const auto on_uh = context_b_measure(uh);
    CHECK(std::abs(on_uh[0] - 0.5) < kAlgebraTol);
    CHECK(std::abs(on_uh[1] - 0.5) < kAlgebraTol);
    CHECK(std::abs(on_uh[2]) < kAlgebraTol);
    CHECK(std::abs(on_uh[3]) < kAlgebraTol);
}

TEST_CASE("joint context probabilities reproduce both expectations") {
    const Operator4 oz = make_observable(ObservableName::Z1Z2);
    const Operator4 ox = make_observable(ObservableName::X1X2);
    std::mt19937 gen(5150);
    for (int i = 0; i < 100; ++i) {
        const PhotonState s = random_primary_state(gen);
        const auto p = context_b_measure(s);
        CHECK(std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) < 1e-12);
        double mz = 0.0, mx = 0.0;
        for (int k = 0; k < 4; ++k) {
            const auto [vz, vx] = context_b_outcome_values(k);
            mz += p[k] * vz;
            mx += p[k] * vx;
        }
        CHECK(std::abs(mz - expectation(oz, s)) < 1e-12);
        CHECK(std::abs(mx - expectation(ox, s)) < 1e-12);
    }
}

TEST_CASE("bounds separate the two theories by a factor of two") {
    const ObservableBounds bounds = observable_bounds();
    CHECK(bounds.nchv_max == 2.0);
    CHECK(std::abs(bounds.qm_max - 4.0) < 1e-10);
    const PhotonState argmax{bounds.qm_argmax, Frame{}};
    CHECK(equal_up_to_global_phase(argmax, correlated_state()));
}

TEST_CASE("combination operator equals its defining sum") {
    const Mat4c c = combination_operator().m;
    const Mat4c direct = Mat4c::Identity() +
                         make_observable(ObservableName::Z1Z2).m +
                         make_observable(ObservableName::X1X2).m -
                         make_observable(ObservableName::Z1X2_X1Z2).m;
    CHECK((c - direct).norm() < kAlgebraTol);

    Eigen::SelfAdjointEigenSolver<Mat4c> solver(c);
    const auto ev = solver.eigenvalues();
    CHECK(std::abs(ev(0)) < 1e-10);
    CHECK(std::abs(ev(1)) < 1e-10);
    CHECK(std::abs(ev(2)) < 1e-10);
    CHECK(std::abs(ev(3) - 4.0) < 1e-10);
}

TEST_CASE("observable names are printable") {
    CHECK(to_string(ObservableName::Z1Z2) == "Z1Z2");
    CHECK(to_string(ObservableName::Z1X2_X1Z2) == "Z1X2.X1Z2");
}
