#include <algorithm>
#include <array>
#include <random>
#include <sstream>

#include "qlr/benchgen.hpp"

namespace qlr {

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {"early_measure", "staggered16", "bell_gap", "qft",
                                                        "iqft", "entangler", "random"};

void header(std::ostringstream& os, std::size_t qubits, std::size_t clbits) {
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    os << "qreg q[" << qubits << "];\n";
    if (clbits > 0) {
        os << "creg c[" << clbits << "];\n";
    }
}

std::string early_measure() {
    return "OPENQASM 2.0;\n"
           "include \"qelib1.inc\";\n"
           "qreg a[2];\nqreg b[1];\n"
           "creg c[3];\n"
           "h a;\n"
           "measure a[0] -> c[0];\n"
           "cx a[1],b[0];\n"
           "measure a[1] -> c[1];\n"
           "measure b[0] -> c[2];\n";
}

std::string staggered16() {
    std::ostringstream os;
    header(os, 16, 16);
    os << "h q[1];\nh q[2];\ncx q[2],q[3];\nh q[2];\nh q[6];\ncx q[6],q[11];\n"
          "cx q[1],q[2];\nh q[11];\nh q[6];\ncx q[6],q[11];\ncx q[11],q[1];\n";
    return os.str();
}

// Controlled phase between k and j is pi/2^(k-j).
std::string phase(std::size_t dist, bool negate) {
    std::string s = negate ? "-pi" : "pi";
    if (dist > 0) {
        s += "/" + std::to_string(std::uint64_t{1} << dist);
    }
    return s;
}

struct QftGate {
    bool is_h;
    std::size_t target;  // j
    std::size_t control; // k (cu1 only)
};

std::vector<QftGate> qft_gates(std::size_t n) {
    std::vector<QftGate> gates;
    for (std::size_t j = 0; j < n; ++j) {
        gates.push_back({true, j, 0});
        for (std::size_t k = j + 1; k < n; ++k) {
            gates.push_back({false, j, k});
        }
    }
    return gates;
}

std::string qft(std::size_t n, bool inverse) {
    std::ostringstream os;
    header(os, n, 0);
    auto gates = qft_gates(n);
    if (inverse) {
        std::reverse(gates.begin(), gates.end());
    }
    for (const auto& g : gates) {
        if (g.is_h) {
            os << "h q[" << g.target << "];\n";
        } else {
            os << "cu1(" << phase(g.control - g.target, inverse) << ") q[" << g.control << "],q[" << g.target
               << "];\n";
        }
    }
    return os.str();
}

std::string entangler(std::size_t n) {
    std::ostringstream os;
    header(os, n, n);
    os << "h q[0];\n";
    for (std::size_t i = 0; i + 1 < n; ++i) {
        os << "cx q[" << i << "],q[" << i + 1 << "];\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        os << "measure q[" << i << "] -> c[" << i << "];\n";
    }
    return os.str();
}

// Bell pair on q[1], q[0] with `gap` spectator cx gates between its h and cx.
std::string bell_gap(std::size_t gap) {
    std::ostringstream os;
    header(os, 4, 2);
    os << "h q[1];\n";
    for (std::size_t i = 0; i < gap; ++i) {
        os << "cx q[" << (i % 2 == 0 ? 2 : 3) << "],q[0];\n";
    }
    os << "cx q[1],q[0];\n";
    os << "measure q[0] -> c[0];\nmeasure q[1] -> c[1];\n";
    return os.str();
}

std::string random_program(const WorkloadSpec& ws) {
    static constexpr std::array<std::string_view, 6> k1q = {"h", "x", "s", "t", "rz", "ry"};
    static constexpr std::array<std::string_view, 3> k2q = {"cx", "cz", "cu1"};

    std::mt19937_64 rng(ws.seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto angle = [&] {
        // Multiples of 1/8 in (-4, 4): exact in decimal and binary.
        auto k = static_cast<long>(rng() % 64) - 32;
        return static_cast<double>(k) / 8.0;
    };

    std::ostringstream os;
    header(os, ws.n, ws.n);
    std::vector<char> dead(ws.n, 0);
    const double total = ws.mix.single + ws.mix.two + ws.mix.measure;

    for (std::size_t emitted = 0; emitted < ws.length;) {
        std::vector<std::size_t> live;
        for (std::size_t q = 0; q < ws.n; ++q) {
            if (!dead[q]) {
                live.push_back(q);
            }
        }
        if (live.empty()) {
            break;
        }
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        if (u < ws.mix.single || (u < ws.mix.single + ws.mix.two && live.size() < 2)) {
            std::size_t q = live[pick(live.size())];
            auto name = k1q[pick(k1q.size())];
            os << name;
            if (name == "rz" || name == "ry") {
                os << "(" << angle() << ")";
            }
            os << " q[" << q << "];\n";
        } else if (u < ws.mix.single + ws.mix.two) {
            std::size_t a = pick(live.size());
            std::size_t b = pick(live.size() - 1);
            if (b >= a) {
                ++b;
            }
            auto name = k2q[pick(k2q.size())];
            os << name;
            if (name == "cu1") {
                os << "(" << angle() << ")";
            }
            os << " q[" << live[a] << "],q[" << live[b] << "];\n";
        } else {
            std::size_t q = live[pick(live.size())];
            os << "measure q[" << q << "] -> c[" << q << "];\n";
            if (!ws.allow_reuse) {
                dead[q] = 1;
            }
        }
        ++emitted;
    }
    return os.str();
}

void validate(const WorkloadSpec& ws) {
    if (ws.kind == WorkloadKind::early_measure || ws.kind == WorkloadKind::staggered16 || ws.kind == WorkloadKind::bell_gap) {
        return;
    }
    if (ws.n < 1) {
        throw InvalidSpec("workload needs at least one qubit");
    }
    if (ws.kind == WorkloadKind::qft || ws.kind == WorkloadKind::iqft) {
        // Phase denominators are 2^(n-1), held in 64 bits.
        if (ws.n > 64) {
            throw InvalidSpec("qft/iqft supports at most 64 qubits");
        }
    }
    if (ws.kind == WorkloadKind::random) {
        if (ws.mix.single < 0 || ws.mix.two < 0 || ws.mix.measure < 0) {
            throw InvalidSpec("op mix weights must be non-negative");
        }
        if (ws.mix.single + ws.mix.two + ws.mix.measure <= 0) {
            throw InvalidSpec("op mix weights must not all be zero");
        }
    }
}

}  // namespace

std::string_view to_string(WorkloadKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

WorkloadKind parse_workload_kind(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) {
            return static_cast<WorkloadKind>(i);
        }
    }
    throw InvalidSpec("unknown workload kind '" + std::string(name) + "'");
}

std::string generate_source(const WorkloadSpec& ws) {
    validate(ws);
    switch (ws.kind) {
    case WorkloadKind::early_measure:
        return early_measure();
    case WorkloadKind::staggered16:
        return staggered16();
    case WorkloadKind::bell_gap:
        return bell_gap(ws.gap);
    case WorkloadKind::qft:
        return qft(ws.n, false);
    case WorkloadKind::iqft:
        return qft(ws.n, true);
    case WorkloadKind::entangler:
        return entangler(ws.n);
    case WorkloadKind::random:
        return random_program(ws);
    }
    throw InvalidSpec("unknown workload kind");
}

FlatProgram generate(const WorkloadSpec& ws) { return expand(parse(generate_source(ws))); }

}  // namespace qlr
