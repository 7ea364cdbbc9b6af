#include <cmath>
#include <numbers>

#include "qlr/oracle.hpp"
#include "qlr/qelib.hpp"

namespace qlr {

namespace {

using namespace std::complex_literals;

constexpr double kPi = std::numbers::pi;

GateMatrix make(std::size_t arity, std::vector<Amplitude> entries) { return {arity, std::move(entries)}; }

GateMatrix u3(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return make(1, {c, -std::exp(1i * lambda) * s, std::exp(1i * phi) * s, std::exp(1i * (phi + lambda)) * c});
}

GateMatrix diag1(Amplitude a, Amplitude b) { return make(1, {a, 0, 0, b}); }

// |0><0| x I + |1><1| x u
GateMatrix controlled(const GateMatrix& u) {
    std::vector<Amplitude> m(16, 0.0);
    m[0 * 4 + 0] = 1.0;
    m[1 * 4 + 1] = 1.0;
    m[2 * 4 + 2] = u.at(0, 0);
    m[2 * 4 + 3] = u.at(0, 1);
    m[3 * 4 + 2] = u.at(1, 0);
    m[3 * 4 + 3] = u.at(1, 1);
    return make(2, std::move(m));
}

GateMatrix permutation(std::size_t arity, const std::vector<std::size_t>& image) {
    std::size_t dim = std::size_t{1} << arity;
    std::vector<Amplitude> m(dim * dim, 0.0);
    for (std::size_t c = 0; c < dim; ++c) {
        m[image[c] * dim + c] = 1.0;
    }
    return make(arity, std::move(m));
}

struct Entry {
    const char* name;
    std::size_t params;
};

// Parameter counts match the standard library signatures.
constexpr Entry kTable[] = {
    {"U", 3},  {"CX", 0},  {"u3", 3},  {"u2", 2},  {"u1", 1},   {"u0", 1},  {"id", 0},  {"x", 0},
    {"y", 0},  {"z", 0},   {"h", 0},   {"s", 0},   {"sdg", 0},  {"t", 0},   {"tdg", 0}, {"rx", 1},
    {"ry", 1}, {"rz", 1},  {"cx", 0},  {"cz", 0},  {"cy", 0},   {"swap", 0}, {"ch", 0}, {"crz", 1},
    {"cu1", 1}, {"cu3", 3}, {"rzz", 1}, {"ccx", 0}, {"cswap", 0},
};

std::optional<GateMatrix> lookup(std::string_view name, std::span<const double> p) {
    const double r = 1.0 / std::sqrt(2.0);
    if (name == "U" || name == "u3") return u3(p[0], p[1], p[2]);
    if (name == "u2") return u3(kPi / 2, p[0], p[1]);
    if (name == "u1") return diag1(1.0, std::exp(1i * p[0]));
    if (name == "u0" || name == "id") return diag1(1.0, 1.0);
    if (name == "x") return make(1, {0, 1, 1, 0});
    if (name == "y") return make(1, {0, -1i, 1i, 0});
    if (name == "z") return diag1(1.0, -1.0);
    if (name == "h") return make(1, {r, r, r, -r});
    if (name == "s") return diag1(1.0, 1i);
    if (name == "sdg") return diag1(1.0, -1i);
    if (name == "t") return diag1(1.0, std::exp(1i * kPi / 4.0));
    if (name == "tdg") return diag1(1.0, std::exp(-1i * kPi / 4.0));
    if (name == "rx") {
        double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
        return make(1, {c, -1i * s, -1i * s, c});
    }
    if (name == "ry") {
        double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
        return make(1, {c, -s, s, c});
    }
    if (name == "rz") return diag1(std::exp(-1i * p[0] / 2.0), std::exp(1i * p[0] / 2.0));
    if (name == "CX" || name == "cx") return permutation(2, {0, 1, 3, 2});
    if (name == "cz") return controlled(diag1(1.0, -1.0));
    if (name == "cy") return controlled(make(1, {0, -1i, 1i, 0}));
    if (name == "ch") return controlled(make(1, {r, r, r, -r}));
    if (name == "swap") return permutation(2, {0, 2, 1, 3});
    if (name == "crz") return controlled(diag1(std::exp(-1i * p[0] / 2.0), std::exp(1i * p[0] / 2.0)));
    if (name == "cu1") return controlled(diag1(1.0, std::exp(1i * p[0])));
    if (name == "cu3") return controlled(u3(p[0], p[1], p[2]));
    if (name == "rzz") {
        Amplitude e = std::exp(1i * p[0]);
        return make(2, {1, 0, 0, 0, 0, e, 0, 0, 0, 0, e, 0, 0, 0, 0, 1});
    }
    if (name == "ccx") return permutation(3, {0, 1, 2, 3, 4, 5, 7, 6});
    // Control is the first operand (MSB); swap the other two when it is set.
    if (name == "cswap") return permutation(3, {0, 1, 2, 3, 4, 6, 5, 7});
    return std::nullopt;
}

}  // namespace

bool GateMatrix::is_unitary(double tol) const {
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Amplitude sum = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                sum += std::conj(at(k, i)) * at(k, j);
            }
            Amplitude expected = i == j ? 1.0 : 0.0;
            if (std::abs(sum - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::optional<GateMatrix> gate_matrix(std::string_view name, std::span<const double> params) {
    for (const auto& e : kTable) {
        if (name == e.name) {
            if (params.size() != e.params) {
                return std::nullopt;
            }
            return lookup(name, params);
        }
    }
    return std::nullopt;
}

const std::vector<std::string>& matrix_table() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : kTable) {
            out.emplace_back(e.name);
        }
        return out;
    }();
    return names;
}

std::vector<std::string> validate_gate_table(double tol) {
    const double samples[] = {0.0, 0.3, -1.1, kPi / 2, kPi, 2.5};
    std::vector<std::string> bad;
    for (const auto& e : kTable) {
        bool ok = true;
        for (double a : samples) {
            std::vector<double> p(e.params);
            for (std::size_t k = 0; k < p.size(); ++k) {
                p[k] = a * static_cast<double>(k + 1) - 0.2 * static_cast<double>(k);
            }
            auto m = lookup(e.name, p);
            ok = ok && m && m->is_unitary(tol);
        }
        if (!ok) {
            bad.emplace_back(e.name);
        }
    }
    return bad;
}

StateVector::StateVector(std::size_t qubits, std::size_t basis_index) : qubits_(qubits) {
    if (qubits > kMaxOracleQubits) {
        throw OracleError(OracleError::Kind::too_many_qubits,
                          "oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits, got " +
                              std::to_string(qubits));
    }
    amps_.assign(std::size_t{1} << qubits, 0.0);
    amps_.at(basis_index) = 1.0;
}

void StateVector::apply(const GateMatrix& m, std::span<const QubitId> operands) {
    const std::size_t k = m.arity;
    const std::size_t d = m.dim();
    std::size_t mask = 0;
    for (QubitId q : operands) {
        mask |= std::size_t{1} << q;
    }
    std::vector<std::size_t> offsets(d);
    for (std::size_t local = 0; local < d; ++local) {
        std::size_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (local & (std::size_t{1} << (k - 1 - j))) {
                off |= std::size_t{1} << operands[j];
            }
        }
        offsets[local] = off;
    }
    std::vector<Amplitude> in(d), out(d);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (base & mask) {
            continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
            in[c] = amps_[base | offsets[c]];
        }
        for (std::size_t r = 0; r < d; ++r) {
            Amplitude acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                acc += m.entries[r * d + c] * in[c];
            }
            out[r] = acc;
        }
        for (std::size_t r = 0; r < d; ++r) {
            amps_[base | offsets[r]] = out[r];
        }
    }
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

namespace {

void apply_named(const FlatProgram& fp, StateVector& state, const std::string& name, const std::vector<double>& params,
                 const std::vector<QubitId>& qubits, int depth) {
    if (auto m = gate_matrix(name, params); m && m->arity == qubits.size()) {
        state.apply(*m, qubits);
        return;
    }
    const GateDef* def = fp.find_gate(name);
    if (!def) {
        def = find_standard_gate(name);
    }
    if (!def || depth > 64 || def->params.size() != params.size() || def->qubits.size() != qubits.size()) {
        throw OracleError(OracleError::Kind::unknown_gate, "no matrix for gate '" + name + "'");
    }
    Bindings env;
    for (std::size_t i = 0; i < params.size(); ++i) {
        env[def->params[i]] = params[i];
    }
    auto actual = [&](const Argument& a) -> QubitId {
        for (std::size_t i = 0; i < def->qubits.size(); ++i) {
            if (def->qubits[i] == a.reg) {
                return qubits[i];
            }
        }
        throw OracleError(OracleError::Kind::unknown_gate, "bad formal '" + a.reg + "' in gate '" + name + "'");
    };
    for (const auto& st : def->body) {
        if (const auto* call = std::get_if<GateCall>(&st)) {
            std::vector<double> p;
            for (const auto& e : call->params) {
                p.push_back(evaluate(e, env));
            }
            std::vector<QubitId> qs;
            for (const auto& a : call->qubits) {
                qs.push_back(actual(a));
            }
            apply_named(fp, state, call->name, p, qs, depth + 1);
        }
    }
}

}  // namespace

void run(const FlatProgram& fp, StateVector& state) {
    for (const auto& inst : fp.instructions) {
        if (inst.is_barrier()) {
            continue;
        }
        if (inst.is_measure()) {
            throw OracleError(OracleError::Kind::measurement_present,
                              "the oracle only simulates measurement-free programs");
        }
        apply_named(fp, state, inst.op, inst.params, inst.qubits, 0);
    }
}

StateVector simulate(const FlatProgram& fp) {
    StateVector state(fp.qubit_count());
    run(fp, state);
    return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.qubits() != b.qubits()) {
        throw std::invalid_argument("state widths differ");
    }
    Amplitude inner = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        inner += std::conj(a[i]) * b[i];
    }
    return std::abs(inner);
}

bool equivalent(const FlatProgram& a, const FlatProgram& b, double tol) {
    return fidelity(simulate(a), simulate(b)) >= 1.0 - tol;
}

std::vector<Amplitude> unitary_of(const FlatProgram& fp) {
    std::size_t n = fp.qubit_count();
    std::size_t dim = std::size_t{1} << n;
    std::vector<Amplitude> u(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s(n, col);
        run(fp, s);
        for (std::size_t row = 0; row < dim; ++row) {
            u[row * dim + col] = s[row];
        }
    }
    return u;
}

}  // namespace qlr
