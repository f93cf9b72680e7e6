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

#include "photonctx/optics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace photonctx {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

template <class... Ts> struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overload(Ts...) -> Overload<Ts...>;

Vec2c rect_axis_vector(SplitBasis basis, int axis) {
    // Basis vectors expressed in rectilinear coordinates.
    if (basis == SplitBasis::Rectilinear) {
        return axis == 0 ? Vec2c(1.0, 0.0) : Vec2c(0.0, 1.0);
    }
    return axis == 0 ? Vec2c(kInvSqrt2, kInvSqrt2)
                     : Vec2c(kInvSqrt2, -kInvSqrt2);
}

} // namespace

std::string to_string(DetectorId d) {
    return "D" + std::to_string(static_cast<int>(d) + 1);
}

int num_input_ports(const ElementKind &kind) {
    return std::visit(Overload{[](const element::Source &) { return 0; },
                               [](const element::PolarizingBS &) { return 1; },
                               [](const element::BalancedBS &) { return 2; },
                               [](const element::PhaseShift &) { return 1; },
                               [](const element::Attenuator &) { return 1; },
                               [](const element::Detector &) { return 1; }},
                      kind);
}

int num_output_ports(const ElementKind &kind) {
    return std::visit(Overload{[](const element::Source &) { return 1; },
                               [](const element::PolarizingBS &) { return 2; },
                               [](const element::BalancedBS &) { return 2; },
                               [](const element::PhaseShift &) { return 1; },
                               [](const element::Attenuator &) { return 1; },
                               [](const element::Detector &) { return 0; }},
                      kind);
}

std::string input_port_name(const ElementKind &kind, int port) {
    if (std::holds_alternative<element::BalancedBS>(kind)) {
        return port == 0 ? "u" : "d";
    }
    return "in";
}

std::string output_port_name(const ElementKind &kind, int port) {
    if (std::holds_alternative<element::PolarizingBS>(kind)) {
        return port == 0 ? "t" : "r";
    }
    if (std::holds_alternative<element::BalancedBS>(kind)) {
        return port == 0 ? "up" : "dp";
    }
    return "out";
}

Complex DetectorAmplitudes::amp(int k) const {
    const double h = std::abs(jones[k](0));
    const double v = std::abs(jones[k](1));
    if (h > kAlgebraTol && v > kAlgebraTol) {
        throw ConsistencyError("detector " + std::to_string(k + 1) +
                               " is fed by a mixed polarization mode");
    }
    return v > h ? jones[k](1) : jones[k](0);
}

std::array<double, kNumDetectors> DetectorAmplitudes::probabilities() const {
    std::array<double, kNumDetectors> p{};
    for (int k = 0; k < kNumDetectors; ++k) {
        p[k] = probability(k);
    }
    return p;
}

double DetectorAmplitudes::total_probability() const {
    double t = 0.0;
    for (int k = 0; k < kNumDetectors; ++k) {
        t += probability(k);
    }
    return t;
}

int OpticalNetwork::add_node(std::string name, ElementKind kind) {
    Node n;
    n.name = std::move(name);
    n.in_edges.assign(num_input_ports(kind), -1);
    n.out_edges.assign(num_output_ports(kind), -1);
    n.kind = std::move(kind);
    nodes_.push_back(std::move(n));
    report_.reset();
    return static_cast<int>(nodes_.size()) - 1;
}

int OpticalNetwork::add_source(std::string name) {
    return add_node(std::move(name), element::Source{});
}
int OpticalNetwork::add_polarizing_bs(std::string name,
                                      element::PolarizingBS pbs) {
    if (pbs.transmit != 0 && pbs.transmit != 1) {
        throw NetworkError("polarizing splitter transmit axis must be 0 or 1");
    }
    return add_node(std::move(name), pbs);
}
int OpticalNetwork::add_balanced_bs(std::string name, element::BalancedBS bs) {
    if (bs.transmittance < 0.0 || bs.transmittance > 1.0) {
        throw NetworkError("splitter transmittance must lie in [0, 1]");
    }
    return add_node(std::move(name), bs);
}
int OpticalNetwork::add_phase_shift(std::string name, element::PhaseShift ps) {
    return add_node(std::move(name), ps);
}
int OpticalNetwork::add_attenuator(std::string name, element::Attenuator at) {
    return add_node(std::move(name), at);
}
int OpticalNetwork::add_detector(std::string name, DetectorId id) {
    return add_node(std::move(name), element::Detector{id});
}

void OpticalNetwork::connect(int from, int from_port, int to, int to_port) {
    auto in_range = [this](int n) { return n >= 0 && n < node_count(); };
    if (!in_range(from) || !in_range(to)) {
        throw NetworkError("connect: node index out of range");
    }
    Node &f = nodes_[from];
    Node &t = nodes_[to];
    if (from_port < 0 || from_port >= static_cast<int>(f.out_edges.size())) {
        throw NetworkError("connect: " + f.name + " has no output port " +
                           std::to_string(from_port));
    }
    if (to_port < 0 || to_port >= static_cast<int>(t.in_edges.size())) {
        throw NetworkError("connect: " + t.name + " has no input port " +
                           std::to_string(to_port));
    }
    if (f.out_edges[from_port] != -1) {
        throw NetworkError("connect: output " + f.name + "." +
                           output_port_name(f.kind, from_port) +
                           " is already connected");
    }
    if (t.in_edges[to_port] != -1) {
        throw NetworkError("connect: input " + t.name + "." +
                           input_port_name(t.kind, to_port) +
                           " is already connected");
    }
    const int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{from, from_port, to, to_port});
    f.out_edges[from_port] = id;
    t.in_edges[to_port] = id;
    report_.reset();
}

int OpticalNetwork::find_node(const std::string &name) const {
    for (int i = 0; i < node_count(); ++i) {
        if (nodes_[i].name == name) {
            return i;
        }
    }
    return -1;
}

std::vector<int>
OpticalNetwork::topological_order(std::vector<std::string> *issues) const {
    std::vector<int> indeg(nodes_.size(), 0);
    for (const Edge &e : edges_) {
        ++indeg[e.to_node];
    }
    std::deque<int> ready;
    for (int i = 0; i < node_count(); ++i) {
        if (indeg[i] == 0) {
            ready.push_back(i);
        }
    }
    std::vector<int> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        const int n = ready.front();
        ready.pop_front();
        order.push_back(n);
        for (int e : nodes_[n].out_edges) {
            if (e != -1 && --indeg[edges_[e].to_node] == 0) {
                ready.push_back(edges_[e].to_node);
            }
        }
    }
    if (order.size() != nodes_.size() && issues != nullptr) {
        issues->push_back("network contains a cycle");
    }
    return order;
}

ValidationReport OpticalNetwork::run_checks() const {
    ValidationReport rep;
    int sources = 0;
    std::array<int, kNumDetectors> detector_seen{};
    for (int i = 0; i < node_count(); ++i) {
        const Node &n = nodes_[i];
        if (std::holds_alternative<element::Source>(n.kind)) {
            ++sources;
        }
        if (const auto *det = std::get_if<element::Detector>(&n.kind)) {
            ++detector_seen[static_cast<int>(det->id)];
            if (n.in_edges[0] == -1) {
                rep.issues.push_back("detector " + n.name + " input " +
                                     "is not connected");
            }
        }
        for (size_t p = 0; p < n.out_edges.size(); ++p) {
            if (n.out_edges[p] == -1) {
                rep.issues.push_back(
                    "output port " + n.name + "." +
                    output_port_name(n.kind, static_cast<int>(p)) +
                    " is not connected");
            }
        }
    }
    if (sources != 1) {
        rep.issues.push_back("expected exactly 1 source, found " +
                             std::to_string(sources));
    }
    int detectors = 0;
    for (int k = 0; k < kNumDetectors; ++k) {
        detectors += detector_seen[k];
        if (detector_seen[k] > 1) {
            rep.issues.push_back("detector id D" + std::to_string(k + 1) +
                                 " appears more than once");
        }
    }
    if (detectors != kNumDetectors) {
        rep.issues.push_back("expected exactly 8 detectors, found " +
                             std::to_string(detectors));
    }
    for (int k = 0; k < kNumDetectors; ++k) {
        if (detector_seen[k] == 0) {
            rep.issues.push_back("detector id D" + std::to_string(k + 1) +
                                 " is missing");
        }
    }

    topo_order_ = topological_order(&rep.issues);

    // Probe conservation only on structurally sound networks.
    if (rep.issues.empty()) {
        rep.ok = true; // provisionally, so propagation can run
        report_ = rep;
        const Vec2c probes[4] = {Vec2c(1.0, 0.0), Vec2c(0.0, 1.0),
                                 Vec2c(kInvSqrt2, kInvSqrt2),
                                 Vec2c(kInvSqrt2, Complex(0.0, kInvSqrt2))};
        const int src = [this] {
            for (int i = 0; i < node_count(); ++i) {
                if (std::holds_alternative<element::Source>(nodes_[i].kind)) {
                    return i;
                }
            }
            return -1;
        }();
        for (const Vec2c &probe : probes) {
            const Injection inj{src, 0, probe};
            const DetectorAmplitudes out =
                propagate_injections(*this, std::span(&inj, 1));
            rep.max_conservation_deficit =
                std::max(rep.max_conservation_deficit,
                         std::abs(1.0 - out.total_probability()));
        }
        if (rep.max_conservation_deficit > kAlgebraTol) {
            rep.ok = false;
            rep.issues.push_back(
                "probability not conserved: max deficit " +
                std::to_string(rep.max_conservation_deficit));
        }
    }
    return rep;
}

const ValidationReport &OpticalNetwork::validate() const {
    report_ = run_checks();
    return *report_;
}

std::string OpticalNetwork::dump() const {
    std::string out;
    for (const Edge &e : edges_) {
        const Node &f = nodes_[e.from_node];
        const Node &t = nodes_[e.to_node];
        out += f.name + "." + output_port_name(f.kind, e.from_port) + " -> " +
               t.name + "." + input_port_name(t.kind, e.to_port) + "\n";
    }
    return out;
}

DetectorAmplitudes propagate_injections(const OpticalNetwork &net,
                                        std::span<const Injection> injections) {
    if (!net.is_validated()) {
        const ValidationReport &rep = net.validate();
        if (!rep.ok) {
            std::string msg = "invalid network:";
            for (const auto &i : rep.issues) {
                msg += "\n  - " + i;
            }
            throw NetworkError(msg);
        }
    }

    std::vector<Vec2c> edge_amp(net.edges_.size(), Vec2c::Zero());
    for (const Injection &inj : injections) {
        if (inj.node < 0 || inj.node >= net.node_count()) {
            throw NetworkError("injection node index out of range");
        }
        const auto &out_edges = net.nodes_[inj.node].out_edges;
        if (inj.port < 0 || inj.port >= static_cast<int>(out_edges.size()) ||
            out_edges[inj.port] == -1) {
            throw NetworkError("injection targets a disconnected port of " +
                               net.nodes_[inj.node].name);
        }
        edge_amp[out_edges[inj.port]] += inj.jones;
    }

    DetectorAmplitudes result;
    for (int n : net.topo_order_) {
        const auto &node = net.nodes_[n];
        auto in_of = [&](int port) -> Vec2c {
            const int e = node.in_edges[port];
            return e == -1 ? Vec2c(Vec2c::Zero()) : edge_amp[e];
        };
        auto emit = [&](int port, const Vec2c &v) {
            const int e = node.out_edges[port];
            if (e != -1) {
                edge_amp[e] += v;
            }
        };
        std::visit(
            Overload{
                [&](const element::Source &) {
                    // Emits only injected amplitude, already on its edge.
                },
                [&](const element::PolarizingBS &pbs) {
                    const Vec2c in = in_of(0);
                    const Vec2c t_axis = rect_axis_vector(pbs.basis, pbs.transmit);
                    const Vec2c r_axis =
                        rect_axis_vector(pbs.basis, 1 - pbs.transmit);
                    emit(0, t_axis * t_axis.dot(in));
                    emit(1, r_axis * (pbs.reflect_phase * r_axis.dot(in)));
                },
                [&](const element::BalancedBS &bs) {
                    const Mat2c s = splitter_matrix(bs.transmittance);
                    const Vec2c u = in_of(0), d = in_of(1);
                    emit(0, s(0, 0) * u + s(0, 1) * d);
                    emit(1, s(1, 0) * u + s(1, 1) * d);
                },
                [&](const element::PhaseShift &ps) {
                    emit(0, std::exp(Complex(0.0, ps.phi)) * in_of(0));
                },
                [&](const element::Attenuator &at) {
                    emit(0, at.amplitude * in_of(0));
                },
                [&](const element::Detector &det) {
                    result.jones[static_cast<int>(det.id)] = in_of(0);
                },
            },
            node.kind);
    }
    return result;
}

DetectorAmplitudes propagate(const OpticalNetwork &net, const PhotonState &in) {
    detail::require_normalized(in, "input state");
    if (in.frame.path != PathFrame::Source) {
        throw FrameMismatchError(
            "propagate expects a source-frame state, got " +
            to_string(in.frame));
    }
    PhotonState rect = in.frame.pol == PolFrame::Rectilinear
                           ? in
                           : polarization_basis_change(in, PolFrame::Rectilinear);
    if (rect.amps.segment<2>(2).norm() > kAlgebraTol) {
        throw NormalizationError(
            "source-frame state carries amplitude in the unused second mode");
    }
    int src = -1;
    for (int i = 0; i < net.node_count(); ++i) {
        if (std::holds_alternative<element::Source>(net.kind(i))) {
            src = i;
            break;
        }
    }
    if (src == -1) {
        throw NetworkError("network has no source node");
    }
    const Injection inj{src, 0, rect.amps.head<2>()};
    return propagate_injections(net, std::span(&inj, 1));
}

DetectorAmplitudes propagate_primary(const OpticalNetwork &net,
                                     const PhotonState &in) {
    detail::require_normalized(in, "input state");
    if (in.frame.path != PathFrame::Primary) {
        throw FrameMismatchError(
            "propagate_primary expects a u/d-frame state, got " +
            to_string(in.frame));
    }
    PhotonState rect = in.frame.pol == PolFrame::Rectilinear
                           ? in
                           : polarization_basis_change(in, PolFrame::Rectilinear);
    const int ps0 = net.find_node("PS0");
    if (ps0 == -1) {
        throw NetworkError("network has no PS0 node to define the u/d plane");
    }
    const Injection inj[2] = {Injection{ps0, 0, rect.amps.head<2>()},
                              Injection{ps0, 1, rect.amps.tail<2>()}};
    return propagate_injections(net, std::span(inj, 2));
}

DetectorAmplitudes propagate_from(const OpticalNetwork &net,
                                  const std::string &node_name, int out_port,
                                  const Vec2c &jones) {
    const int n = net.find_node(node_name);
    if (n == -1) {
        throw NetworkError("no node named " + node_name);
    }
    const Injection inj{n, out_port, jones};
    return propagate_injections(net, std::span(&inj, 1));
}

Eigen::Matrix<Complex, 8, 4> primary_transfer_matrix(const OpticalNetwork &net) {
    Eigen::Matrix<Complex, 8, 4> a;
    for (int col = 0; col < 4; ++col) {
        PhotonState basis;
        basis.frame = {PathFrame::Primary, PolFrame::Rectilinear};
        basis.amps(col) = 1.0;
        const DetectorAmplitudes out = propagate_primary(net, basis);
        for (int k = 0; k < kNumDetectors; ++k) {
            a(k, col) = out.amp(k);
        }
    }
    return a;
}

OpticalNetwork build_fig1_network(const Fig1Params &params) {
    OpticalNetwork net;
    const Complex rp = params.pbs_reflect_phase;

    const int src = net.add_source("SRC");
    const int ps0 = net.add_polarizing_bs(
        "PS0", {SplitBasis::Rectilinear, /*transmit H*/ 0, rp});
    const int ps1 = net.add_polarizing_bs(
        "PS1", {SplitBasis::Diagonal, /*transmit +45*/ 0, rp});
    const int ps2 = net.add_polarizing_bs(
        "PS2", {SplitBasis::Diagonal, /*transmit -45*/ 1, rp});

    // One phase shifter per arm segment feeding a balanced splitter.
    const int ph_s1u = net.add_phase_shift("PH_S1U", {params.arm_phases[0]});
    const int ph_s1d = net.add_phase_shift("PH_S1D", {params.arm_phases[1]});
    const int ph_s2u = net.add_phase_shift("PH_S2U", {params.arm_phases[2]});
    const int ph_s2d = net.add_phase_shift("PH_S2D", {params.arm_phases[3]});

    const int s1 = net.add_balanced_bs("S1", {params.bs_transmittance[0]});
    const int s2 = net.add_balanced_bs("S2", {params.bs_transmittance[1]});

    const int ps3 = net.add_polarizing_bs("PS3", {SplitBasis::Rectilinear, 0, rp});
    const int ps4 = net.add_polarizing_bs("PS4", {SplitBasis::Rectilinear, 0, rp});
    const int ps5 = net.add_polarizing_bs("PS5", {SplitBasis::Rectilinear, 0, rp});
    const int ps6 = net.add_polarizing_bs("PS6", {SplitBasis::Rectilinear, 0, rp});

    std::array<int, kNumDetectors> det;
    for (int k = 0; k < kNumDetectors; ++k) {
        det[k] = net.add_detector("D" + std::to_string(k + 1),
                                  static_cast<DetectorId>(k));
    }

    // Source and primary splitter: H -> arm u, V -> arm d.
    net.connect(src, 0, ps0, 0);
    net.connect(ps0, 0, ps1, 0); // u arm
    net.connect(ps0, 1, ps2, 0); // d arm

    // Diagonal splitters: reflected components meet at S1, transmitted at S2.
    net.connect(ps1, 1, ph_s1u, 0); // u, -45 reflected
    net.connect(ps2, 1, ph_s1d, 0); // d, +45 reflected
    net.connect(ps1, 0, ph_s2u, 0); // u, +45 transmitted
    net.connect(ps2, 0, ph_s2d, 0); // d, -45 transmitted
    net.connect(ph_s1u, 0, s1, 0);
    net.connect(ph_s1d, 0, s1, 1);
    net.connect(ph_s2u, 0, s2, 0);
    net.connect(ph_s2d, 0, s2, 1);

    // Rectilinear analyzers; odd detectors sit on the transmitted (H) port.
    net.connect(s1, 0, ps3, 0);
    net.connect(s1, 1, ps4, 0);
    net.connect(s2, 0, ps5, 0);
    net.connect(s2, 1, ps6, 0);
    net.connect(ps3, 0, det[0], 0);
    net.connect(ps3, 1, det[1], 0);
    net.connect(ps4, 0, det[2], 0);
    net.connect(ps4, 1, det[3], 0);
    net.connect(ps5, 0, det[4], 0);
    net.connect(ps5, 1, det[5], 0);
    net.connect(ps6, 0, det[6], 0);
    net.connect(ps6, 1, det[7], 0);

    net.validate();
    return net;
}

} // namespace photonctx
