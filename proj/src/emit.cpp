#include <cstdio>
#include <sstream>

#include "qlr/qasm.hpp"

namespace qlr {

namespace {

std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_args(const std::vector<Argument>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += args[i].reg;
    }
    return out;
}

void emit_gate_def(std::ostream& os, const GateDef& g) {
    os << "gate " << g.name;
    if (!g.params.empty()) {
        os << "(";
        for (std::size_t i = 0; i < g.params.size(); ++i) {
            os << (i ? "," : "") << g.params[i];
        }
        os << ")";
    }
    os << " ";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        os << (i ? "," : "") << g.qubits[i];
    }
    os << " {\n";
    for (const auto& st : g.body) {
        os << "  ";
        if (const auto* call = std::get_if<GateCall>(&st)) {
            os << call->name;
            if (!call->params.empty()) {
                os << "(";
                for (std::size_t i = 0; i < call->params.size(); ++i) {
                    os << (i ? "," : "") << to_qasm(call->params[i]);
                }
                os << ")";
            }
            os << " " << join_args(call->qubits) << ";\n";
        } else {
            const auto& b = std::get<Barrier>(st);
            os << "barrier";
            if (!b.qubits.empty()) {
                os << " " << join_args(b.qubits);
            }
            os << ";\n";
        }
    }
    os << "}\n";
}

}  // namespace

std::string format_instruction(const FlatInstruction& inst, const RegisterLayout& layout) {
    std::string out = inst.op;
    if (inst.is_measure()) {
        out += " " + layout.qubit_name(inst.qubits.at(0)) + " -> " + layout.clbit_name(inst.clbits.at(0)) + ";";
        return out;
    }
    if (!inst.params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < inst.params.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += format_angle(inst.params[i]);
        }
        out += ")";
    }
    out += " ";
    for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += layout.qubit_name(inst.qubits[i]);
    }
    out += ";";
    return out;
}

std::string emit(const FlatProgram& fp) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    for (const auto& g : fp.gate_defs) {
        emit_gate_def(os, g);
    }
    for (const auto& r : fp.layout.qregs) {
        os << "qreg " << r.name << "[" << r.size << "];\n";
    }
    for (const auto& r : fp.layout.cregs) {
        os << "creg " << r.name << "[" << r.size << "];\n";
    }
    for (const auto& inst : fp.instructions) {
        os << format_instruction(inst, fp.layout) << "\n";
    }
    return os.str();
}

}  // namespace qlr
