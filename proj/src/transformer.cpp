#include <algorithm>

#include "qlr/transformer.hpp"

namespace qlr {

bool check_qubits(const FlatInstruction& inst, const QubitStates& states, QubitState s) {
    return std::all_of(inst.qubits.begin(), inst.qubits.end(), [&](QubitId q) { return states[q] == s; });
}

void set_qubits(const FlatInstruction& inst, QubitStates& states, QubitState s) {
    for (QubitId q : inst.qubits) {
        states[q] = s;
    }
}

Transformer::Transformer(LayeredProgram& lp) : lp_(lp), states_(lp.qubit_count(), QubitState::ground) {
    for (auto& inst : lp_.instructions) {
        if (inst.is_barrier()) {
            inst.visited = true;
        }
    }
}

bool Transformer::barrier_blocks(std::size_t layer, const std::vector<char>& in_chain) const {
    for (InstrId m : lp_.bundles[layer].members) {
        const FlatInstruction& inst = lp_.instructions[m];
        if (inst.is_barrier() &&
            std::any_of(inst.qubits.begin(), inst.qubits.end(), [&](QubitId q) { return in_chain[q]; })) {
            return true;
        }
    }
    return false;
}

void Transformer::place(std::size_t layer, std::vector<InstrId>& members) {
    Bundle& target = lp_.bundles[layer];
    for (InstrId id : members) {
        lp_.instructions[id].seq = static_cast<int>(layer);
        target.members.push_back(id);
    }
}

void Transformer::adjust(InstrId id) {
    struct Pending {
        std::size_t formed_at;
        std::vector<InstrId> members;
    };

    FlatInstruction& root = lp_.instructions[id];
    const auto root_layer = static_cast<std::size_t>(root.seq);
    auto& home = lp_.bundles[root_layer].members;
    home.erase(std::remove(home.begin(), home.end(), id), home.end());

    std::vector<char> in_chain(lp_.qubit_count(), 0);
    for (QubitId q : root.qubits) {
        in_chain[q] = 1;
    }
    std::vector<Pending> stack;
    stack.push_back({root_layer, {id}});

    bool measured = false;
    for (std::size_t cur = root_layer + 1; cur < lp_.end() && !measured; ++cur) {
        if (barrier_blocks(cur, in_chain)) {
            break;
        }
        std::vector<InstrId> pulled;
        std::vector<InstrId> kept;
        for (InstrId m : lp_.bundles[cur].members) {
            FlatInstruction& inst = lp_.instructions[m];
            bool overlap =
                std::any_of(inst.qubits.begin(), inst.qubits.end(), [&](QubitId q) { return in_chain[q]; });
            if (!overlap || inst.is_barrier()) {
                kept.push_back(m);
                continue;
            }
            if (inst.is_measure()) {
                measured = true;
                set_qubits(inst, states_, QubitState::ground);
            }
            for (QubitId q : inst.qubits) {
                in_chain[q] = 1;
            }
            inst.visited = true;
            pulled.push_back(m);
        }
        if (!pulled.empty()) {
            lp_.bundles[cur].members = std::move(kept);
            stack.push_back({cur, std::move(pulled)});
        }
    }

    std::size_t line = stack.back().formed_at;
    while (!stack.empty()) {
        place(line, stack.back().members);
        stack.pop_back();
        --line;
    }
}

void Transformer::run() {
    for (std::size_t index = lp_.start; index < lp_.end(); ++index) {
        for (InstrId id : lp_.layer_members(index)) {
            FlatInstruction& inst = lp_.instructions[id];
            if (inst.seq != static_cast<int>(index) || inst.is_barrier()) {
                continue;
            }
            if (!check_qubits(inst, states_, QubitState::not_ground) && !inst.visited) {
                inst.visited = true;
                set_qubits(inst, states_, QubitState::not_ground);
                adjust(id);
            }
            if (inst.is_measure()) {
                set_qubits(inst, states_, QubitState::ground);
            }
        }
    }
    while (lp_.start < lp_.end() && lp_.bundles[lp_.start].empty()) {
        ++lp_.start;
    }
}

LayeredProgram transform(LayeredProgram lp) {
    Transformer(lp).run();
    return lp;
}

FlatProgram optimize(const FlatProgram& fp, const OptimizeOptions& options) {
    return to_sequence(transform(stratify(fp, options.packing)));
}

}  // namespace qlr
