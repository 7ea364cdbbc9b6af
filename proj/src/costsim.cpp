#include <algorithm>
#include <stdexcept>

#include "qlr/costsim.hpp"

namespace qlr {

void CostModel::validate() const {
    if (single_qubit_cost < 0 || two_qubit_cost < 0 || measure_cost < 0 || barrier_cost < 0) {
        throw std::invalid_argument("cost model entries must be non-negative");
    }
}

CostModel CostModel::scaled(double k) const {
    return {single_qubit_cost * k, two_qubit_cost * k, measure_cost * k, barrier_cost * k};
}

double instruction_cost(const FlatInstruction& inst, const CostModel& cm) {
    switch (inst.op_class()) {
    case OpClass::single:
        return cm.single_qubit_cost;
    case OpClass::two:
        return cm.two_qubit_cost;
    case OpClass::measure:
        return cm.measure_cost;
    case OpClass::barrier:
        return cm.barrier_cost;
    }
    return 0.0;
}

double layer_cost(const LayeredProgram& lp, const Bundle& b, const CostModel& cm) {
    double cost = 0.0;
    for (InstrId id : b.members) {
        cost = std::max(cost, instruction_cost(lp.instructions[id], cm));
    }
    return cost;
}

double execution_time(const LayeredProgram& lp, const CostModel& cm) {
    double total = 0.0;
    for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
        total += layer_cost(lp, lp.bundles[i], cm);
    }
    return total;
}

namespace {

// Walks (position, instruction) events for one qubit in execution order and
// sums prefix-cost ranges over each segment. `prefix[k]` is the total cost
// of positions < k.
template <typename Events>
double segment_sum(const Events& events, const std::vector<double>& prefix) {
    double total = 0.0;
    bool open = false;
    std::size_t first = 0;
    std::size_t last = 0;
    for (const auto& [pos, inst] : events) {
        if (inst->is_barrier()) {
            continue;
        }
        if (!open) {
            open = true;
            first = pos;
        }
        last = pos;
        if (inst->is_measure()) {
            total += prefix[pos + 1] - prefix[first];
            open = false;
        }
    }
    if (open) {
        total += prefix[last + 1] - prefix[first];
    }
    return total;
}

std::vector<double> layer_prefix(const LayeredProgram& lp, const CostModel& cm) {
    std::vector<double> prefix(lp.bundles.size() + 1, 0.0);
    for (std::size_t i = 0; i < lp.bundles.size(); ++i) {
        double c = i >= lp.start ? layer_cost(lp, lp.bundles[i], cm) : 0.0;
        prefix[i + 1] = prefix[i] + c;
    }
    return prefix;
}

double layered_lifetime_with(const LayeredProgram& lp, QubitId q, const std::vector<double>& prefix) {
    std::vector<std::pair<std::size_t, const FlatInstruction*>> events;
    for (InstrId id : lp.qubit_ops.at(q)) {
        const FlatInstruction& inst = lp.instructions[id];
        events.emplace_back(static_cast<std::size_t>(inst.seq), &inst);
    }
    // Layers preserve per-qubit order, so sorting by layer keeps program
    // order for this qubit.
    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return segment_sum(events, prefix);
}

double average(const std::map<QubitId, double>& per_qubit, std::size_t count) {
    if (count == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& [q, v] : per_qubit) {
        sum += v;
    }
    return sum / static_cast<double>(count);
}

void finish(LifetimeReport& r, AverageDenominator denominator) {
    r.average_denominator = denominator;
    r.longest_lifetime = 0.0;
    for (const auto& [q, v] : r.per_qubit) {
        r.longest_lifetime = std::max(r.longest_lifetime, v);
    }
    r.average_lifetime =
        average(r.per_qubit, denominator == AverageDenominator::declared ? r.declared_qubits : r.active_qubits);
}

template <typename Instructions>
std::size_t count_active(std::size_t qubits, const Instructions& insts) {
    std::vector<char> active(qubits, 0);
    for (const auto& inst : insts) {
        if (!inst.is_barrier()) {
            for (QubitId q : inst.qubits) {
                active[q] = 1;
            }
        }
    }
    return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
}

}  // namespace

double layered_lifetime(const LayeredProgram& lp, QubitId q, const CostModel& cm) {
    return layered_lifetime_with(lp, q, layer_prefix(lp, cm));
}

double serial_lifetime(const FlatProgram& fp, QubitId q, const CostModel& cm) {
    std::vector<double> prefix(fp.instructions.size() + 1, 0.0);
    std::vector<std::pair<std::size_t, const FlatInstruction*>> events;
    for (std::size_t i = 0; i < fp.instructions.size(); ++i) {
        const FlatInstruction& inst = fp.instructions[i];
        prefix[i + 1] = prefix[i] + instruction_cost(inst, cm);
        if (inst.touches(q)) {
            events.emplace_back(i, &inst);
        }
    }
    return segment_sum(events, prefix);
}

LifetimeReport analyze_layered(const LayeredProgram& lp, const CostModel& cm, AverageDenominator denominator) {
    cm.validate();
    LifetimeReport r;
    r.mode = TimingModel::layered;
    r.measure_cost = cm.measure_cost;
    r.depth = depth(lp);
    r.execution_time = execution_time(lp, cm);
    r.declared_qubits = lp.qubit_count();
    r.active_qubits = count_active(lp.qubit_count(), lp.instructions);
    auto prefix = layer_prefix(lp, cm);
    for (QubitId q = 0; q < lp.qubit_count(); ++q) {
        r.per_qubit[q] = layered_lifetime_with(lp, q, prefix);
    }
    finish(r, denominator);
    return r;
}

LifetimeReport analyze(const FlatProgram& fp, const CostModel& cm, TimingModel mode, AverageDenominator denominator) {
    if (mode == TimingModel::layered) {
        return analyze_layered(stratify(fp), cm, denominator);
    }
    cm.validate();
    LifetimeReport r;
    r.mode = TimingModel::serial;
    r.measure_cost = cm.measure_cost;
    r.depth = fp.instructions.size();
    for (const auto& inst : fp.instructions) {
        r.execution_time += instruction_cost(inst, cm);
    }
    r.declared_qubits = fp.qubit_count();
    r.active_qubits = count_active(fp.qubit_count(), fp.instructions);
    for (QubitId q = 0; q < fp.qubit_count(); ++q) {
        r.per_qubit[q] = serial_lifetime(fp, q, cm);
    }
    finish(r, denominator);
    return r;
}

}  // namespace qlr
