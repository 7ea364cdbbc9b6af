// Layered bundle format: a program as an ordered array of bundles, each
// bundle holding instructions with pairwise-disjoint qubit sets.
#pragma once

#include <string>
#include <vector>

#include "qlr/qasm.hpp"

namespace qlr {

/// How a flat sequence is packed into bundles.
///  - greedy: scan in order, close the bundle at the first overlap.
///  - serial: one instruction per bundle (strictly sequential execution).
enum class Packing { greedy, serial };

struct Bundle {
    std::vector<InstrId> members;  // indices into LayeredProgram::instructions
    int formed_at = 0;

    bool empty() const { return members.empty(); }
};

/// Layer 0 holds the qubit start nodes and never contains instructions, so
/// the first instruction layer is 1 and `start` begins at 1.
struct LayeredProgram {
    RegisterLayout layout;
    std::vector<GateDef> gate_defs;
    std::vector<FlatInstruction> instructions;  // indexed by id
    std::vector<Bundle> bundles;
    std::size_t start = 1;
    Packing packing = Packing::greedy;
    /// Per qubit, the ids of instructions touching it in program order.
    std::vector<std::vector<InstrId>> qubit_ops;

    std::size_t qubit_count() const { return layout.qubit_count(); }
    std::size_t end() const { return bundles.size(); }

    /// Layer index of instruction `id`.
    int layer_of(InstrId id) const { return instructions.at(id).seq; }

    /// Members of layer `index` sorted by ascending id.
    std::vector<InstrId> layer_members(std::size_t index) const;
};

LayeredProgram stratify(const FlatProgram& fp, Packing packing = Packing::greedy);

/// Number of non-empty bundles at or after `start`.
std::size_t depth(const LayeredProgram& lp);

/// Original ids in emission order: layer by layer from `start`. Within a
/// layer ids ascend; serial packing emits measurements first.
std::vector<InstrId> emission_order(const LayeredProgram& lp);

/// Flattens the layers back into a sequence. Ids are renumbered 0..n-1.
FlatProgram to_sequence(const LayeredProgram& lp);

/// One line per live layer: `L<index>: op(q[a],q[b]) ...`.
std::string dump_layers(const LayeredProgram& lp);

/// Dependency DAG in Graphviz DOT. Qubits are the start nodes at rank 0;
/// edges follow each qubit's instruction order.
std::string to_dot(const LayeredProgram& lp);

}  // namespace qlr
