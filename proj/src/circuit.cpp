// Copyright 2026 The clawe-lab Authors
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

#include "clawe/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace clawe {

namespace {

void check_gate(const Gate& g, int n_qubits) {
    if (g.q0 < 0 || g.q0 >= n_qubits) {
        throw std::invalid_argument("gate qubit index out of range");
    }
    if (g.is_cnot()) {
        if (g.q1 < 0 || g.q1 >= n_qubits || g.q1 == g.q0) {
            throw std::invalid_argument("CNOT needs two distinct in-range qubits");
        }
    } else if (g.q1 != -1) {
        throw std::invalid_argument("single-qubit gate carries a second qubit index");
    }
}

// Pauli indices 0..3 = I, X, Y, Z. Conjugating a Pauli pair through a CNOT
// (control first) permutes the pairs; phases are dropped, which is why
// randomized compilation preserves the unitary only up to a global phase.
constexpr std::array<std::array<std::pair<int, int>, 4>, 4> kCnotPauliFrame = {{
    {{{0, 0}, {0, 1}, {3, 2}, {3, 3}}},  // control I
    {{{1, 1}, {1, 0}, {2, 3}, {2, 2}}},  // control X
    {{{2, 1}, {2, 0}, {1, 3}, {1, 2}}},  // control Y
    {{{3, 0}, {3, 1}, {0, 2}, {0, 3}}},  // control Z
}};

Gate pauli_gate(int pauli, int qubit) {
    switch (pauli) {
        case 1: return Gate::x(qubit);
        case 2: return Gate::y(qubit);
        case 3: return Gate::z(qubit);
        default: return Gate::rz(qubit, 0.0);  // identity placeholder
    }
}

}  // namespace

Matrix Gate::matrix() const {
    const Complex i(0.0, 1.0);
    Matrix m;
    switch (kind) {
        case GateKind::H:
            m.resize(2, 2);
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            return m;
        case GateKind::X: return linalg::pauli_x();
        case GateKind::Y: return linalg::pauli_y();
        case GateKind::Z: return linalg::pauli_z();
        case GateKind::S:
            m.resize(2, 2);
            m << 1, 0, 0, i;
            return m;
        case GateKind::Sdg:
            m.resize(2, 2);
            m << 1, 0, 0, -i;
            return m;
        case GateKind::RX: {
            m.resize(2, 2);
            const double c = std::cos(theta / 2), s = std::sin(theta / 2);
            m << c, -i * s, -i * s, c;
            return m;
        }
        case GateKind::RZ: {
            m.resize(2, 2);
            m << std::exp(-i * (theta / 2)), 0, 0, std::exp(i * (theta / 2));
            return m;
        }
        case GateKind::CNOT:
            m = Matrix::Zero(4, 4);
            m(0, 0) = 1;
            m(1, 1) = 1;
            m(2, 3) = 1;
            m(3, 2) = 1;
            return m;
    }
    throw std::logic_error("unreachable gate kind");
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::S: g.kind = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind = GateKind::S; break;
        case GateKind::RX:
        case GateKind::RZ: g.theta = -theta; break;
        default: break;  // H, X, Y, Z, CNOT are self-inverse
    }
    return g;
}

Circuit::Circuit(int n_qubits_in, std::vector<Gate> gates_in)
    : n_qubits(n_qubits_in), gates(std::move(gates_in)) {
    if (n_qubits < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
    for (const Gate& g : gates) {
        check_gate(g, n_qubits);
    }
}

int scalar_depth(const Circuit& c) {
    int depth = 0;
    for (const Gate& g : c.gates) {
        depth += g.is_cnot();
    }
    return depth;
}

Circuit concat(const Circuit& a, const Circuit& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("concat: qubit count mismatch");
    }
    Circuit out = a;
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    return out;
}

Circuit inverse(const Circuit& c) {
    Circuit out;
    out.n_qubits = c.n_qubits;
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        out.gates.push_back(it->inverse());
    }
    return out;
}

Circuit power(const Circuit& c, int k) {
    if (k < 1) {
        throw std::invalid_argument("power: exponent must be >= 1");
    }
    Circuit out;
    out.n_qubits = c.n_qubits;
    out.gates.reserve(c.gates.size() * static_cast<std::size_t>(k));
    for (int rep = 0; rep < k; ++rep) {
        out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
    }
    return out;
}

std::vector<Circuit> fragment(const Circuit& c, const std::vector<int>& boundaries) {
    const int n_gates = static_cast<int>(c.gates.size());
    int prev = 0;
    for (int b : boundaries) {
        if (b <= 0 || b >= n_gates) {
            throw std::invalid_argument("fragment: boundary " + std::to_string(b) +
                                        " out of range");
        }
        if (b <= prev) {
            throw std::invalid_argument("fragment: boundaries must be strictly increasing");
        }
        prev = b;
    }
    std::vector<Circuit> pieces;
    pieces.reserve(boundaries.size() + 1);
    std::size_t start = 0;
    auto cut = [&](std::size_t end) {
        Circuit piece;
        piece.n_qubits = c.n_qubits;
        piece.gates.assign(c.gates.begin() + start, c.gates.begin() + end);
        pieces.push_back(std::move(piece));
        start = end;
    };
    for (int b : boundaries) {
        cut(static_cast<std::size_t>(b));
    }
    cut(c.gates.size());
    return pieces;
}

Circuit qcna_fold(const Circuit& c, int round) {
    if (round < 0 || round > 3) {
        throw std::invalid_argument("qcna_fold: round must be in 0..3");
    }
    const int copies = 2 * round + 1;
    Circuit out;
    out.n_qubits = c.n_qubits;
    for (const Gate& g : c.gates) {
        if (g.is_cnot()) {
            for (int r = 0; r < copies; ++r) {
                out.gates.push_back(g);
            }
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

Circuit randomized_compile(const Circuit& c, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<int> pauli_dist(0, 3);
    Circuit out;
    out.n_qubits = c.n_qubits;
    for (const Gate& g : c.gates) {
        if (!g.is_cnot()) {
            out.gates.push_back(g);
            continue;
        }
        const int pc = pauli_dist(rng);
        const int pt = pauli_dist(rng);
        const auto [qc, qt] = kCnotPauliFrame[pc][pt];
        out.gates.push_back(pauli_gate(pc, g.q0));
        out.gates.push_back(pauli_gate(pt, g.q1));
        out.gates.push_back(g);
        out.gates.push_back(pauli_gate(qc, g.q0));
        out.gates.push_back(pauli_gate(qt, g.q1));
    }
    return out;
}

Matrix circuit_unitary(const Circuit& c) {
    const int dim = linalg::dim_for_qubits(c.n_qubits);
    Matrix u = Matrix::Identity(dim, dim);
    for (const Gate& g : c.gates) {
        check_gate(g, c.n_qubits);
        const Matrix full = g.is_cnot()
                                ? linalg::embed_two_qubit(g.matrix(), g.q0, g.q1, c.n_qubits)
                                : linalg::embed_one_qubit(g.matrix(), g.q0, c.n_qubits);
        u = full * u;
    }
    return u;
}

Circuit label_entangling_slots(const Circuit& c, int first_slot) {
    Circuit out = c;
    int slot = first_slot;
    for (Gate& g : out.gates) {
        if (g.is_cnot()) {
            g.noise_slot = slot++;
        }
    }
    return out;
}

namespace {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

}  // namespace

std::string circuit_to_text(const Circuit& c) {
    std::string out;
    char buf[64];
    for (const Gate& g : c.gates) {
        out += kind_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (g.is_cnot()) {
            out += ',';
            out += std::to_string(g.q1);
        } else if (g.kind == GateKind::RX || g.kind == GateKind::RZ) {
            std::snprintf(buf, sizeof buf, ",%.17g", g.theta);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Circuit circuit_from_text(int n_qubits, const std::string& text) {
    std::vector<Gate> gates;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        std::string kind, args;
        ls >> kind >> args;
        auto fail = [&](const std::string& why) -> Gate {
            throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " +
                                        why);
        };
        static const std::string kKnown[] = {"H", "X", "Y", "Z", "S", "SDG", "RX", "RZ", "CNOT"};
        if (std::find(std::begin(kKnown), std::end(kKnown), kind) == std::end(kKnown)) {
            fail("unknown gate kind '" + kind + "'");
        }
        const auto comma = args.find(',');
        const std::string a0 = args.substr(0, comma);
        const std::string a1 = comma == std::string::npos ? "" : args.substr(comma + 1);
        try {
            if (kind == "H") gates.push_back(Gate::h(std::stoi(a0)));
            else if (kind == "X") gates.push_back(Gate::x(std::stoi(a0)));
            else if (kind == "Y") gates.push_back(Gate::y(std::stoi(a0)));
            else if (kind == "Z") gates.push_back(Gate::z(std::stoi(a0)));
            else if (kind == "S") gates.push_back(Gate::s(std::stoi(a0)));
            else if (kind == "SDG") gates.push_back(Gate::sdg(std::stoi(a0)));
            else if (kind == "RX") gates.push_back(Gate::rx(std::stoi(a0), std::stod(a1)));
            else if (kind == "RZ") gates.push_back(Gate::rz(std::stoi(a0), std::stod(a1)));
            else gates.push_back(Gate::cnot(std::stoi(a0), std::stoi(a1)));
        } catch (const std::logic_error&) {
            fail("malformed arguments '" + args + "'");
        }
    }
    return Circuit(n_qubits, std::move(gates));
}

}  // namespace clawe
