#include <algorithm>
#include <cmath>

#include "qlr/qasm.hpp"
#include "qlr/qelib.hpp"

namespace qlr {

std::size_t RegisterLayout::qubit_count() const {
    std::size_t n = 0;
    for (const auto& r : qregs) {
        n += r.size;
    }
    return n;
}

std::size_t RegisterLayout::clbit_count() const {
    std::size_t n = 0;
    for (const auto& r : cregs) {
        n += r.size;
    }
    return n;
}

namespace {

std::size_t offset_in(const std::vector<Register>& regs, std::string_view name) {
    std::size_t off = 0;
    for (const auto& r : regs) {
        if (r.name == name) {
            return off;
        }
        off += r.size;
    }
    throw QasmError(ErrorKind::undeclared_register, "register '" + std::string(name) + "' is not declared");
}

std::string name_in(const std::vector<Register>& regs, std::size_t id) {
    for (const auto& r : regs) {
        if (id < r.size) {
            return r.name + "[" + std::to_string(id) + "]";
        }
        id -= r.size;
    }
    throw QasmError(ErrorKind::index_out_of_range, "bit id out of range");
}

}  // namespace

std::size_t RegisterLayout::qubit_offset(std::string_view reg) const { return offset_in(qregs, reg); }
std::size_t RegisterLayout::clbit_offset(std::string_view reg) const { return offset_in(cregs, reg); }
std::string RegisterLayout::qubit_name(QubitId q) const { return name_in(qregs, q); }
std::string RegisterLayout::clbit_name(ClbitId c) const { return name_in(cregs, c); }

OpClass FlatInstruction::op_class() const {
    if (op == "measure") {
        return OpClass::measure;
    }
    if (op == "barrier") {
        return OpClass::barrier;
    }
    return qubits.size() >= 2 ? OpClass::two : OpClass::single;
}

bool FlatInstruction::touches(QubitId q) const {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

bool FlatInstruction::overlaps(const FlatInstruction& other) const {
    for (QubitId q : qubits) {
        if (other.touches(q)) {
            return true;
        }
    }
    return false;
}

const GateDef* FlatProgram::find_gate(std::string_view name) const {
    for (const auto& g : gate_defs) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

bool same_program(const FlatProgram& a, const FlatProgram& b, double param_tolerance) {
    if (!(a.layout == b.layout) || a.gate_defs.size() != b.gate_defs.size() ||
        a.instructions.size() != b.instructions.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.gate_defs.size(); ++i) {
        const auto& x = a.gate_defs[i];
        const auto& y = b.gate_defs[i];
        if (x.name != y.name || x.params != y.params || x.qubits != y.qubits || x.body.size() != y.body.size()) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.instructions.size(); ++i) {
        const auto& x = a.instructions[i];
        const auto& y = b.instructions[i];
        if (x.id != y.id || x.op != y.op || x.qubits != y.qubits || x.clbits != y.clbits ||
            x.params.size() != y.params.size()) {
            return false;
        }
        for (std::size_t k = 0; k < x.params.size(); ++k) {
            double scale = std::max({1.0, std::abs(x.params[k]), std::abs(y.params[k])});
            if (std::abs(x.params[k] - y.params[k]) > param_tolerance * scale) {
                return false;
            }
        }
    }
    return true;
}

namespace {

class Expander {
public:
    explicit Expander(const Program& p) : prog_(p) {
        out_.layout.qregs = p.qregs;
        out_.layout.cregs = p.cregs;
        out_.gate_defs = p.gate_defs;
    }

    FlatProgram run() {
        for (const auto& st : prog_.statements) {
            std::visit([this](const auto& s) { top_level(s); }, st);
        }
        for (std::size_t i = 0; i < out_.instructions.size(); ++i) {
            out_.instructions[i].id = i;
        }
        return std::move(out_);
    }

private:
    [[noreturn]] static void fail(ErrorKind k, const std::string& msg, SourcePos pos) {
        throw QasmError(k, msg, pos.line, pos.column);
    }

    const GateDef* definition(std::string_view name) const {
        if (const GateDef* g = prog_.find_gate(name)) {
            return g;
        }
        return find_standard_gate(name);
    }

    std::size_t qreg_size(const Argument& a) const {
        const Register* r = prog_.find_qreg(a.reg);
        if (!r) {
            fail(ErrorKind::undeclared_register, "quantum register '" + a.reg + "' is not declared", a.pos);
        }
        return r->size;
    }

    QubitId qubit_of(const Argument& a, std::size_t k) const {
        std::size_t size = qreg_size(a);
        std::size_t idx = a.index ? *a.index : k;
        if (idx >= size) {
            fail(ErrorKind::index_out_of_range, "index out of range for register '" + a.reg + "'", a.pos);
        }
        return out_.layout.qubit_offset(a.reg) + idx;
    }

    // Number of broadcast instances for a list of arguments; 1 when all are
    // indexed.
    std::size_t broadcast_width(const std::vector<Argument>& args, SourcePos pos) const {
        std::size_t width = 0;
        for (const auto& a : args) {
            if (a.index) {
                continue;
            }
            std::size_t s = qreg_size(a);
            if (width != 0 && s != width) {
                fail(ErrorKind::arity_mismatch, "register operands have different sizes", pos);
            }
            width = s;
        }
        return width == 0 ? 1 : width;
    }

    void top_level(const GateCall& call) {
        std::size_t width = broadcast_width(call.qubits, call.pos);
        std::vector<double> params;
        params.reserve(call.params.size());
        for (const auto& e : call.params) {
            params.push_back(evaluate(e));
        }
        for (std::size_t k = 0; k < width; ++k) {
            std::vector<QubitId> qs;
            for (const auto& a : call.qubits) {
                qs.push_back(qubit_of(a, k));
            }
            apply(call.name, params, qs, call.pos, 0);
        }
    }

    void top_level(const Measure& m) {
        const Register* creg = prog_.find_creg(m.bit.reg);
        if (!creg) {
            fail(ErrorKind::undeclared_register, "classical register '" + m.bit.reg + "' is not declared", m.bit.pos);
        }
        std::size_t qsize = qreg_size(m.qubit);
        std::size_t width = 1;
        if (!m.qubit.index || !m.bit.index) {
            if (m.qubit.index || m.bit.index || qsize != creg->size) {
                fail(ErrorKind::arity_mismatch, "measure operands have different sizes", m.pos);
            }
            width = qsize;
        }
        for (std::size_t k = 0; k < width; ++k) {
            FlatInstruction inst;
            inst.op = "measure";
            inst.qubits = {qubit_of(m.qubit, k)};
            std::size_t bit = m.bit.index ? *m.bit.index : k;
            if (bit >= creg->size) {
                fail(ErrorKind::index_out_of_range, "index out of range for register '" + m.bit.reg + "'", m.bit.pos);
            }
            inst.clbits = {out_.layout.clbit_offset(m.bit.reg) + bit};
            out_.instructions.push_back(std::move(inst));
        }
    }

    void top_level(const Barrier& b) {
        FlatInstruction inst;
        inst.op = "barrier";
        if (b.qubits.empty()) {
            for (QubitId q = 0; q < out_.layout.qubit_count(); ++q) {
                inst.qubits.push_back(q);
            }
        }
        for (const auto& a : b.qubits) {
            std::size_t count = a.index ? 1 : qreg_size(a);
            for (std::size_t k = 0; k < count; ++k) {
                QubitId q = qubit_of(a, k);
                if (!inst.touches(q)) {
                    inst.qubits.push_back(q);
                }
            }
        }
        if (!inst.qubits.empty()) {
            out_.instructions.push_back(std::move(inst));
        }
    }

    void apply(const std::string& name, const std::vector<double>& params, const std::vector<QubitId>& qubits,
               SourcePos pos, int depth) {
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            for (std::size_t j = i + 1; j < qubits.size(); ++j) {
                if (qubits[i] == qubits[j]) {
                    fail(ErrorKind::arity_mismatch, "gate '" + name + "' applied to the same qubit twice", pos);
                }
            }
        }
        if (qubits.size() <= 2) {
            FlatInstruction inst;
            inst.op = name;
            inst.params = params;
            inst.qubits = qubits;
            out_.instructions.push_back(std::move(inst));
            return;
        }
        const GateDef* def = is_builtin_gate(name) ? nullptr : definition(name);
        if (!def) {
            fail(ErrorKind::expansion, "no definition available for " + std::to_string(qubits.size()) +
                                           "-qubit gate '" + name + "'",
                 pos);
        }
        if (depth > 64) {
            fail(ErrorKind::expansion, "gate expansion nested too deeply at '" + name + "'", pos);
        }
        if (def->params.size() != params.size() || def->qubits.size() != qubits.size()) {
            fail(ErrorKind::arity_mismatch, "wrong number of operands for gate '" + name + "'", pos);
        }
        Bindings env;
        for (std::size_t i = 0; i < params.size(); ++i) {
            env[def->params[i]] = params[i];
        }
        auto actual = [&](const Argument& a) {
            for (std::size_t i = 0; i < def->qubits.size(); ++i) {
                if (def->qubits[i] == a.reg) {
                    return qubits[i];
                }
            }
            fail(ErrorKind::expansion, "unknown formal qubit '" + a.reg + "' in gate '" + name + "'", a.pos);
        };
        for (const auto& st : def->body) {
            if (const auto* call = std::get_if<GateCall>(&st)) {
                std::vector<double> inner_params;
                for (const auto& e : call->params) {
                    inner_params.push_back(evaluate(e, env));
                }
                std::vector<QubitId> inner_qubits;
                for (const auto& a : call->qubits) {
                    inner_qubits.push_back(actual(a));
                }
                apply(call->name, inner_params, inner_qubits, pos, depth + 1);
            } else {
                const auto& b = std::get<Barrier>(st);
                FlatInstruction inst;
                inst.op = "barrier";
                if (b.qubits.empty()) {
                    inst.qubits = qubits;
                }
                for (const auto& a : b.qubits) {
                    QubitId q = actual(a);
                    if (!inst.touches(q)) {
                        inst.qubits.push_back(q);
                    }
                }
                out_.instructions.push_back(std::move(inst));
            }
        }
    }

    const Program& prog_;
    FlatProgram out_;
};

}  // namespace

FlatProgram expand(const Program& program) { return Expander(program).run(); }

FlatProgram load_flat(std::string_view text) { return expand(parse(text)); }

}  // namespace qlr
