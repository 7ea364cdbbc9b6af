// Lifetime-reducing transformation over the layered bundle format.
//
// A qubit is GROUND until an instruction touches it and NOTGROUND until a
// measurement returns it to GROUND. The transformer walks the layers in
// order; every unvisited instruction that acts on a GROUND qubit starts a
// lifetime and is delayed together with everything that depends on it (see
// Transformer::adjust), so lifetimes begin as late as possible.
#pragma once

#include <vector>

#include "qlr/layering.hpp"

namespace qlr {

enum class QubitState { ground, not_ground };

using QubitStates = std::vector<QubitState>;

/// True iff every qubit of `inst` is in state `s`.
bool check_qubits(const FlatInstruction& inst, const QubitStates& states, QubitState s);

/// Puts every qubit of `inst` in state `s`.
void set_qubits(const FlatInstruction& inst, QubitStates& states, QubitState s);

/// Mutates one LayeredProgram in place. Not thread-safe; distinct programs
/// may be transformed concurrently.
class Transformer {
public:
    explicit Transformer(LayeredProgram& lp);

    /// Delays `id` and every instruction overlapping the growing qubit set
    /// of the chain, layer by layer, until the end of the program or until
    /// a layer in which a measurement joined the chain. The collected
    /// bundles are then re-placed from the top of the stack: the last one
    /// keeps its layer and each earlier one lands one layer below the
    /// previous. A barrier overlapping the chain ends the scan before its
    /// layer.
    void adjust(InstrId id);

    /// Runs the full pass: adjustments in layer order, then advances
    /// `start` past leading empty layers.
    void run();

    QubitState state(QubitId q) const { return states_.at(q); }
    QubitStates& states() { return states_; }

private:
    void place(std::size_t layer, std::vector<InstrId>& members);
    bool barrier_blocks(std::size_t layer, const std::vector<char>& in_chain) const;

    LayeredProgram& lp_;
    QubitStates states_;
};

/// transform(lp): the pass applied to a copy.
LayeredProgram transform(LayeredProgram lp);

struct OptimizeOptions {
    Packing packing = Packing::greedy;
};

/// to_sequence(transform(stratify(fp))).
FlatProgram optimize(const FlatProgram& fp, const OptimizeOptions& options = {});

}  // namespace qlr
