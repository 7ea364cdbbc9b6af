#include <algorithm>
#include <sstream>

#include "qlr/layering.hpp"

namespace qlr {

std::vector<InstrId> LayeredProgram::layer_members(std::size_t index) const {
    std::vector<InstrId> ids = bundles.at(index).members;
    std::sort(ids.begin(), ids.end());
    return ids;
}

LayeredProgram stratify(const FlatProgram& fp, Packing packing) {
    LayeredProgram lp;
    lp.layout = fp.layout;
    lp.gate_defs = fp.gate_defs;
    lp.instructions = fp.instructions;
    lp.packing = packing;
    lp.qubit_ops.assign(fp.qubit_count(), {});
    lp.bundles.emplace_back();  // layer 0: qubit start nodes

    std::vector<char> in_bundle(fp.qubit_count(), 0);
    Bundle current;
    auto close = [&] {
        if (current.empty()) {
            return;
        }
        for (InstrId id : current.members) {
            for (QubitId q : lp.instructions[id].qubits) {
                in_bundle[q] = 0;
            }
        }
        current.formed_at = static_cast<int>(lp.bundles.size());
        lp.bundles.push_back(std::move(current));
        current = Bundle{};
    };

    for (InstrId id = 0; id < lp.instructions.size(); ++id) {
        FlatInstruction& inst = lp.instructions[id];
        inst.id = id;
        inst.visited = false;
        bool overlap = std::any_of(inst.qubits.begin(), inst.qubits.end(), [&](QubitId q) { return in_bundle[q]; });
        if (overlap || inst.is_barrier() || packing == Packing::serial) {
            close();
        }
        current.members.push_back(id);
        for (QubitId q : inst.qubits) {
            in_bundle[q] = 1;
            lp.qubit_ops[q].push_back(id);
        }
        inst.seq = static_cast<int>(lp.bundles.size());
        if (inst.is_barrier()) {
            close();
        }
    }
    close();
    return lp;
}

std::size_t depth(const LayeredProgram& lp) {
    std::size_t d = 0;
    for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
        if (!lp.bundles[i].empty()) {
            ++d;
        }
    }
    return d;
}

std::vector<InstrId> emission_order(const LayeredProgram& lp) {
    std::vector<InstrId> order;
    order.reserve(lp.instructions.size());
    for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
        std::vector<InstrId> ids = lp.layer_members(i);
        if (lp.packing == Packing::serial) {
            // Members of a layer are independent; ending a lifetime before
            // starting another keeps serial lifetimes short.
            std::stable_partition(ids.begin(), ids.end(),
                                  [&](InstrId id) { return lp.instructions[id].is_measure(); });
        }
        order.insert(order.end(), ids.begin(), ids.end());
    }
    return order;
}

FlatProgram to_sequence(const LayeredProgram& lp) {
    FlatProgram fp;
    fp.layout = lp.layout;
    fp.gate_defs = lp.gate_defs;
    for (InstrId id : emission_order(lp)) {
        FlatInstruction inst = lp.instructions[id];
        inst.id = fp.instructions.size();
        inst.seq = -1;
        inst.visited = false;
        fp.instructions.push_back(std::move(inst));
    }
    return fp;
}

namespace {

std::string token(const FlatInstruction& inst, const RegisterLayout& layout) {
    std::string s = inst.op + "(";
    for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
        s += (i ? "," : "") + layout.qubit_name(inst.qubits[i]);
    }
    return s + ")";
}

}  // namespace

std::string dump_layers(const LayeredProgram& lp) {
    std::ostringstream os;
    for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
        if (lp.bundles[i].empty()) {
            continue;
        }
        os << "L" << i << ":";
        for (InstrId id : lp.layer_members(i)) {
            os << " " << token(lp.instructions[id], lp.layout);
        }
        os << "\n";
    }
    return os.str();
}

std::string to_dot(const LayeredProgram& lp) {
    std::ostringstream os;
    os << "digraph layered {\n  rankdir=TB;\n  node [shape=circle];\n";
    os << "  { rank=same;";
    for (QubitId q = 0; q < lp.qubit_count(); ++q) {
        if (!lp.qubit_ops[q].empty()) {
            os << " q" << q << ";";
        }
    }
    os << " }\n";
    for (QubitId q = 0; q < lp.qubit_count(); ++q) {
        if (!lp.qubit_ops[q].empty()) {
            os << "  q" << q << " [shape=box,label=\"" << lp.layout.qubit_name(q) << "\"];\n";
        }
    }
    for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
        if (lp.bundles[i].empty()) {
            continue;
        }
        os << "  { rank=same;";
        for (InstrId id : lp.layer_members(i)) {
            os << " n" << id << ";";
        }
        os << " }\n";
        for (InstrId id : lp.layer_members(i)) {
            os << "  n" << id << " [label=\"" << lp.instructions[id].op << "\"];\n";
        }
    }
    for (QubitId q = 0; q < lp.qubit_count(); ++q) {
        std::string prev = "q" + std::to_string(q);
        for (InstrId id : lp.qubit_ops[q]) {
            std::string cur = "n" + std::to_string(id);
            os << "  " << prev << " -> " << cur << " [label=\"" << lp.layout.qubit_name(q) << "\"];\n";
            prev = cur;
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace qlr
