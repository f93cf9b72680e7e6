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
 * Exact complex linear algebra on the 4-dimensional path (x) polarization
 * Hilbert space: states, operators, tensor products, basis changes, and the
 * numerical tolerance policy shared by every module.
 *
 * Canonical index order is (u(x)H, u(x)V, d(x)H, d(x)V) and is fixed
 * project-wide. A PhotonState carries a frame tag naming which path frame
 * (source mode, u/d, or u'/d') and which polarization frame (rectilinear or
 * diagonal) its four coordinates refer to.
 */

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>

#include "photonctx/errors.hpp"

namespace photonctx {

using Complex = std::complex<double>;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

/// Hard tolerance for exact-algebra checks (norms, unitarity, residuals).
inline constexpr double kAlgebraTol = 1e-12;
/// Residues above this threshold raise a ConsistencyError.
inline constexpr double kConsistencyTol = 1e-9;

/// Path-mode labels within a two-mode frame.
enum class PathMode { U = 0, D = 1 };

/// Rectilinear polarization axes: H = 0 deg (|->>), V = 90 deg (|^>).
enum class PolAxis { H = 0, V = 1 };

/// Diagonal polarization axes: P = +45 deg, M = -45 deg.
enum class DiagAxis { P = 0, M = 1 };

/// Which pair of spatial modes the path index refers to.
enum class PathFrame {
    Source,  ///< single input mode a (index 0); index 1 must stay empty
    Primary, ///< u/d, between PS0 and the 50-50 splitters
    Split,   ///< u'/d', after a 50-50 splitter
};

/// Which polarization basis the polarization index refers to.
enum class PolFrame {
    Rectilinear, ///< {H, V}
    Diagonal,    ///< {+45, -45}
};

struct Frame {
    PathFrame path = PathFrame::Primary;
    PolFrame pol = PolFrame::Rectilinear;

    friend bool operator==(const Frame &, const Frame &) = default;
};

std::string to_string(const Frame &f);

/// Normalized complex 4-vector over the path (x) polarization basis in
/// canonical order, tagged with the frame its coordinates refer to.
struct PhotonState {
    Vec4c amps = Vec4c::Zero();
    Frame frame{};

    double squared_norm() const { return amps.squaredNorm(); }
    bool is_normalized(double tol = kAlgebraTol) const {
        return std::abs(squared_norm() - 1.0) <= tol;
    }
};

/// 4x4 complex operator in the canonical basis order of a single frame.
struct Operator4 {
    Mat4c m = Mat4c::Zero();
    Frame frame{};

    bool is_hermitian(double tol = kAlgebraTol) const;
    bool is_unitary(double tol = kAlgebraTol) const;
};

/// Canonical flat index of (path, polarization).
inline int canonical_index(PathMode p, PolAxis a) {
    return 2 * static_cast<int>(p) + static_cast<int>(a);
}

/// The 2x2 coordinate matrix of Eq.-style diagonal <-> rectilinear change:
///   |+45> = (|H> + |V>)/sqrt(2),  |-45> = (|H> - |V>)/sqrt(2).
/// The matrix is symmetric and orthogonal, hence its own inverse.
Mat2c diag_rect_change();

/// The 2x2 coordinate matrix of the balanced-splitter path map
///   |u> -> (|u'> + |d'>)/sqrt(2),  |d> -> (|u'> - |d'>)/sqrt(2),
/// generalized to transmission amplitude sqrt(T) (T = 0.5 is balanced).
Mat2c splitter_matrix(double transmittance = 0.5);

/// Kronecker product of a path 2-vector with a polarization 2-vector in
/// canonical order. Both factors must be normalized within kAlgebraTol;
/// throws NormalizationError otherwise.
PhotonState tensor(const Vec2c &path, const Vec2c &pol, Frame frame = {});

/// Basis state |path, axis> in the given frame (rectilinear axes).
PhotonState basis_state(PathMode p, PolAxis a, Frame frame = {});

/// Re-express a state's polarization coordinates in the other frame
/// (diagonal <-> rectilinear). Norm-preserving; applying it twice is the
/// identity. Throws FrameMismatchError when the state is already in
/// `target` and NormalizationError for non-normalized input.
PhotonState polarization_basis_change(const PhotonState &state,
                                      PolFrame target);

/// Matrix-vector product. Operator and state frames must agree.
PhotonState apply(const Operator4 &op, const PhotonState &state);

/// <state|op|state> for Hermitian op on a normalized state. The imaginary
/// residue is checked against kConsistencyTol (ConsistencyError above it)
/// and discarded.
double expectation(const Operator4 &op, const PhotonState &state);

/// <a|b>. Frames must agree.
Complex inner(const PhotonState &a, const PhotonState &b);

/// |<a|b>| == 1 within tol, i.e. equality up to a global phase.
bool equal_up_to_global_phase(const PhotonState &a, const PhotonState &b,
                              double tol = kAlgebraTol);

namespace detail {
void require_normalized(const Vec2c &v, const char *what);
void require_normalized(const PhotonState &s, const char *what);
} // namespace detail

} // namespace photonctx
