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
 * The eight-detector interferometer as a validated DAG of optical elements,
 * with exact linear propagation of a photon state to complex detector
 * amplitudes.
 *
 * Every edge of the network carries a polarization 2-vector (Jones vector)
 * in rectilinear coordinates. Elements map their input-port vectors to
 * output-port vectors:
 *
 *   Source        out: "out"            emits the injected source state
 *   PolarizingBS  in: "in"              splits in its basis: the component
 *                 out: "t", "r"         along `transmit` exits "t"; the
 *                                       orthogonal one exits "r" scaled by
 *                                       `reflect_phase` (default +1)
 *   BalancedBS    in: "u", "d"          u -> sqrt(T) u' + sqrt(1-T) d'
 *                 out: "up", "dp"       d -> sqrt(1-T) u' - sqrt(T) d',
 *                                       identically on both polarizations
 *   PhaseShift    in: "in" out: "out"   multiplies by exp(i phi)
 *   Attenuator    in: "in" out: "out"   multiplies by a real amplitude;
 *                                       diagnostic element, deliberately
 *                                       non-unitary for amplitude < 1
 *   Detector      in: "in"              records the incoming Jones vector
 *
 * The builder `build_fig1_network` wires the standard topology: PS0 splits
 * the source in the rectilinear basis into arms u/d; PS1 (PS2) splits arm
 * u (d) in the diagonal basis; the four arm segments (each with an optional
 * phase shift) feed two balanced splitters S1/S2; PS3..PS6 analyze the
 * splitter outputs in the rectilinear basis onto detectors D1..D8, odd
 * detectors on the transmitted (H) port and even detectors on the reflected
 * (V) port.
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "photonctx/hilbert.hpp"

namespace photonctx {

/// Detector identifiers in the fixed readout order.
enum class DetectorId : int {
    D1 = 0,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
};

inline constexpr int kNumDetectors = 8;

std::string to_string(DetectorId d);

/// Which basis a polarizing splitter separates.
enum class SplitBasis { Rectilinear, Diagonal };

namespace element {

struct Source {};

struct PolarizingBS {
    SplitBasis basis = SplitBasis::Rectilinear;
    /// Index of the transmitted axis within the split basis:
    /// rectilinear 0 = H, 1 = V; diagonal 0 = +45, 1 = -45.
    int transmit = 0;
    /// Amplitude applied to the reflected component. The default +1
    /// convention keeps all amplitudes in the standard network real.
    Complex reflect_phase = Complex(1.0, 0.0);
};

struct BalancedBS {
    /// Power transmittance T; the splitter stays unitary for any T in [0,1].
    double transmittance = 0.5;
};

struct PhaseShift {
    double phi = 0.0;
};

struct Attenuator {
    double amplitude = 1.0;
};

struct Detector {
    DetectorId id = DetectorId::D1;
};

} // namespace element

using ElementKind =
    std::variant<element::Source, element::PolarizingBS, element::BalancedBS,
                 element::PhaseShift, element::Attenuator, element::Detector>;

int num_input_ports(const ElementKind &kind);
int num_output_ports(const ElementKind &kind);
std::string input_port_name(const ElementKind &kind, int port);
std::string output_port_name(const ElementKind &kind, int port);

/// Complex amplitudes at the eight detectors. In the standard network each
/// detector is fed by a single (path-port, polarization) mode, so the
/// amplitude of Dk is one complex coefficient; the full Jones vector is
/// kept so that probabilities stay well defined for arbitrary programmatic
/// networks.
struct DetectorAmplitudes {
    std::array<Vec2c, kNumDetectors> jones{};

    /// Coefficient of the single mode feeding detector k. Throws
    /// ConsistencyError if both polarization components carry weight.
    Complex amp(int k) const;
    double probability(int k) const { return jones[k].squaredNorm(); }
    std::array<double, kNumDetectors> probabilities() const;
    double total_probability() const;
};

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> issues;
    /// Largest probe deficit |1 - total detector probability| observed.
    double max_conservation_deficit = 0.0;
};

/// An amplitude injected onto the edge leaving (node, output port).
struct Injection {
    int node = -1;
    int port = 0;
    Vec2c jones = Vec2c::Zero();
};

/// Directed network of optical elements. Build with the add_*/connect
/// calls, then validate(); propagation requires a valid network.
class OpticalNetwork {
  public:
    int add_source(std::string name);
    int add_polarizing_bs(std::string name, element::PolarizingBS pbs);
    int add_balanced_bs(std::string name, element::BalancedBS bs);
    int add_phase_shift(std::string name, element::PhaseShift ps);
    int add_attenuator(std::string name, element::Attenuator at);
    int add_detector(std::string name, DetectorId id);

    /// Connect (from, output port) -> (to, input port). Each output feeds
    /// exactly one input and each input is fed at most once.
    void connect(int from, int from_port, int to, int to_port);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int find_node(const std::string &name) const; ///< -1 when absent
    const ElementKind &kind(int node) const { return nodes_[node].kind; }
    const std::string &name(int node) const { return nodes_[node].name; }

    /// Structural and conservation checks; caches the topological order on
    /// success. Mutating the network afterwards invalidates the cache.
    const ValidationReport &validate() const;
    bool is_validated() const { return report_.has_value() && report_->ok; }

    /// One edge per line: `NODE.port -> NODE.port`, in creation order.
    std::string dump() const;

    friend DetectorAmplitudes propagate_injections(const OpticalNetwork &net,
                                                   std::span<const Injection>);

  private:
    struct Node {
        std::string name;
        ElementKind kind;
        std::vector<int> in_edges;  // edge id or -1, per input port
        std::vector<int> out_edges; // edge id or -1, per output port
    };
    struct Edge {
        int from_node, from_port, to_node, to_port;
    };

    int add_node(std::string name, ElementKind kind);
    ValidationReport run_checks() const;
    std::vector<int> topological_order(std::vector<std::string> *issues) const;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    mutable std::optional<ValidationReport> report_;
    mutable std::vector<int> topo_order_;
};

/// Parameters of build_fig1_network: four arm phases in the order
/// (S1 u-input, S1 d-input, S2 u-input, S2 d-input), the two balanced-
/// splitter transmittances (S1, S2), and the polarizing-splitter reflection
/// phase convention.
struct Fig1Params {
    std::array<double, 4> arm_phases{0.0, 0.0, 0.0, 0.0};
    std::array<double, 2> bs_transmittance{0.5, 0.5};
    Complex pbs_reflect_phase = Complex(1.0, 0.0);
};

/// The standard interferometer: source -> PS0 -> {PS1, PS2} -> phase-shifted
/// arms -> {S1, S2} -> {PS3..PS6} -> D1..D8. Always passes validate().
OpticalNetwork build_fig1_network(const Fig1Params &params = {});

/// Exact linear propagation of arbitrary injected amplitudes (summed where
/// paths interfere). The network must validate.
DetectorAmplitudes propagate_injections(const OpticalNetwork &net,
                                        std::span<const Injection> injections);

/// Propagate a source-frame state (path index 0 = the source mode; index 1
/// must carry no amplitude). Diagonal-frame states are re-expressed first.
/// Input must be normalized; total detector probability is 1 within
/// kAlgebraTol for any valid network built from unitary elements.
DetectorAmplitudes propagate(const OpticalNetwork &net, const PhotonState &in);

/// Propagate a (u/d, any pol frame) state by injecting it on the two PS0
/// output arms of a standard-topology network. This is the plane on which
/// the canonical observables act.
DetectorAmplitudes propagate_primary(const OpticalNetwork &net,
                                     const PhotonState &in);

/// Inject a single Jones vector on one output port (by node name) and
/// propagate. Mainly a debugging aid; the vector need not be normalized.
DetectorAmplitudes propagate_from(const OpticalNetwork &net,
                                  const std::string &node_name, int out_port,
                                  const Vec2c &jones);

/// 8x4 transfer matrix of a standard-topology network from the primary
/// (u/d, rectilinear) plane to the eight detector modes. Column order
/// follows the canonical basis (uH, uV, dH, dV).
Eigen::Matrix<Complex, 8, 4> primary_transfer_matrix(const OpticalNetwork &net);

} // namespace photonctx
