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

#include "photonctx/hilbert.hpp"

#include <cmath>

namespace photonctx {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;

const char *path_frame_name(PathFrame f) {
    switch (f) {
    case PathFrame::Source:
        return "source";
    case PathFrame::Primary:
        return "u/d";
    case PathFrame::Split:
        return "u'/d'";
    }
    return "?";
}

const char *pol_frame_name(PolFrame f) {
    return f == PolFrame::Rectilinear ? "rectilinear" : "diagonal";
}
} // namespace

std::string to_string(const Frame &f) {
    return std::string("(") + path_frame_name(f.path) + ", " +
           pol_frame_name(f.pol) + ")";
}

bool Operator4::is_hermitian(double tol) const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator4::is_unitary(double tol) const {
    return (m.adjoint() * m - Mat4c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Mat2c diag_rect_change() {
    Mat2c r;
    r << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return r;
}

Mat2c splitter_matrix(double transmittance) {
    const double t = std::sqrt(transmittance);
    const double r = std::sqrt(1.0 - transmittance);
    Mat2c s;
    s << t, r, r, -t;
    return s;
}

namespace detail {

void require_normalized(const Vec2c &v, const char *what) {
    if (std::abs(v.squaredNorm() - 1.0) > kAlgebraTol) {
        throw NormalizationError(std::string(what) +
                                 " is not normalized (|.|^2 = " +
                                 std::to_string(v.squaredNorm()) + ")");
    }
}

void require_normalized(const PhotonState &s, const char *what) {
    if (!s.is_normalized()) {
        throw NormalizationError(std::string(what) +
                                 " is not normalized (|.|^2 = " +
                                 std::to_string(s.squared_norm()) + ")");
    }
}

} // namespace detail

PhotonState tensor(const Vec2c &path, const Vec2c &pol, Frame frame) {
    detail::require_normalized(path, "path factor");
    detail::require_normalized(pol, "polarization factor");
    PhotonState out;
    out.frame = frame;
    for (int p = 0; p < 2; ++p) {
        for (int a = 0; a < 2; ++a) {
            out.amps(2 * p + a) = path(p) * pol(a);
        }
    }
    return out;
}

PhotonState basis_state(PathMode p, PolAxis a, Frame frame) {
    PhotonState out;
    out.frame = frame;
    out.amps(canonical_index(p, a)) = 1.0;
    return out;
}

PhotonState polarization_basis_change(const PhotonState &state,
                                      PolFrame target) {
    detail::require_normalized(state, "state");
    if (state.frame.pol == target) {
        throw FrameMismatchError("state is already in the " +
                                 std::string(pol_frame_name(target)) +
                                 " polarization frame");
    }
    // The change-of-coordinates matrix is the same in both directions.
    const Mat2c r = diag_rect_change();
    PhotonState out;
    out.frame = {state.frame.path, target};
    for (int p = 0; p < 2; ++p) {
        out.amps.segment<2>(2 * p) = r * state.amps.segment<2>(2 * p);
    }
    return out;
}

PhotonState apply(const Operator4 &op, const PhotonState &state) {
    if (op.frame != state.frame) {
        throw FrameMismatchError("operator frame " + to_string(op.frame) +
                                 " does not match state frame " +
                                 to_string(state.frame));
    }
    PhotonState out;
    out.frame = state.frame;
    out.amps = op.m * state.amps;
    return out;
}

double expectation(const Operator4 &op, const PhotonState &state) {
    detail::require_normalized(state, "state");
    if (!op.is_hermitian()) {
        throw ConsistencyError("expectation of a non-Hermitian operator");
    }
    const Complex value = state.amps.dot(op.m * state.amps);
    if (std::abs(value.imag()) > kConsistencyTol) {
        throw ConsistencyError("expectation value has imaginary residue " +
                               std::to_string(value.imag()));
    }
    return value.real();
}

Complex inner(const PhotonState &a, const PhotonState &b) {
    if (a.frame != b.frame) {
        throw FrameMismatchError("inner product across frames " +
                                 to_string(a.frame) + " and " +
                                 to_string(b.frame));
    }
    return a.amps.dot(b.amps);
}

bool equal_up_to_global_phase(const PhotonState &a, const PhotonState &b,
                              double tol) {
    return std::abs(std::abs(inner(a, b)) - 1.0) <= tol;
}

} // namespace photonctx
