#include <cmath>

#include <gtest/gtest.h>

#include "qlr/benchgen.hpp"
#include "qlr/layering.hpp"
#include "qlr/oracle.hpp"
#include "qlr/qelib.hpp"

using namespace qlr;

namespace {

FlatProgram program(const std::string& body) {
    return expand(parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n" + body));
}

const double kR = 1 / std::sqrt(2.0);

}  // namespace

TEST(Oracle, GateTableIsUnitary) { EXPECT_TRUE(validate_gate_table().empty()); }

TEST(Oracle, Hadamard) {
    StateVector s = simulate(program("qreg q[1]; h q[0];"));
    EXPECT_NEAR(std::abs(s[0] - kR), 0, 1e-12);
    EXPECT_NEAR(std::abs(s[1] - kR), 0, 1e-12);
}

TEST(Oracle, EmptyCircuit) {
    StateVector s = simulate(program("qreg q[3];"));
    EXPECT_EQ(s[0], Amplitude(1.0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(Oracle, BellState) {
    StateVector s = simulate(program("qreg q[2]; h q[0]; cx q[0],q[1];"));
    EXPECT_NEAR(std::abs(s[0] - kR), 0, 1e-12);
    EXPECT_NEAR(std::abs(s[1]), 0, 1e-12);
    EXPECT_NEAR(std::abs(s[2]), 0, 1e-12);
    EXPECT_NEAR(std::abs(s[3] - kR), 0, 1e-12);
}

TEST(Oracle, ControlIsFirstOperand) {
    // x on q[1], then cx q[1],q[0] flips q[0]: state |11> = index 3.
    StateVector s = simulate(program("qreg q[2]; x q[1]; cx q[1],q[0];"));
    EXPECT_NEAR(std::abs(s[3]), 1, 1e-12);
}

TEST(Oracle, Equivalence) {
    FlatProgram a = program("qreg q[1]; h q[0];");
    FlatProgram b = program("qreg q[1]; x q[0];");
    EXPECT_TRUE(equivalent(a, a));
    EXPECT_FALSE(equivalent(a, b));
    EXPECT_NEAR(fidelity(simulate(a), simulate(b)), kR, 1e-12);
    // Global phase is ignored: z x |0> = -|1>.
    EXPECT_TRUE(equivalent(b, program("qreg q[1]; x q[0]; z q[0];")));
}

TEST(Oracle, Errors) {
    EXPECT_THROW(simulate(program("qreg q[13];")), OracleError);
    try {
        simulate(program("qreg q[1]; creg c[1]; measure q[0] -> c[0];"));
        FAIL();
    } catch (const OracleError& e) {
        EXPECT_EQ(e.kind(), OracleError::Kind::measurement_present);
    }
    FlatProgram fp = program("qreg q[1]; h q[0];");
    fp.instructions[0].op = "mystery";
    try {
        simulate(fp);
        FAIL();
    } catch (const OracleError& e) {
        EXPECT_EQ(e.kind(), OracleError::Kind::unknown_gate);
    }
}

// Independent check of the table against the library definitions: every
// standard gate body must reproduce its matrix up to global phase.
TEST(Oracle, TableMatchesLibraryBodies) {
    for (const auto& def : standard_gates()) {
        if (def.qubits.size() > 3) {
            continue;
        }
        std::vector<double> params;
        for (std::size_t i = 0; i < def.params.size(); ++i) {
            params.push_back(0.37 + 0.81 * static_cast<double>(i));
        }
        auto direct = gate_matrix(def.name, params);
        if (!direct) {
            continue;
        }
        // Build a program whose only instruction is evaluated through the body.
        FlatProgram fp = program("qreg q[" + std::to_string(def.qubits.size()) + "];");
        GateDef wrapper = def;
        wrapper.name = "wrapped_" + def.name;
        fp.gate_defs.push_back(wrapper);
        FlatInstruction inst;
        inst.op = wrapper.name;
        inst.params = params;
        for (QubitId q = 0; q < def.qubits.size(); ++q) {
            inst.qubits.push_back(q);
        }
        fp.instructions.push_back(inst);
        FlatProgram reference = fp;
        reference.instructions[0].op = def.name;

        std::size_t dim = std::size_t{1} << def.qubits.size();
        for (std::size_t basis = 0; basis < dim; ++basis) {
            StateVector a(def.qubits.size(), basis), b(def.qubits.size(), basis);
            run(fp, a);
            run(reference, b);
            EXPECT_NEAR(fidelity(a, b), 1.0, 1e-9) << def.name << " basis " << basis;
        }
        // Relative phase between columns: start from the uniform superposition.
        FlatProgram pre = fp, pre_ref = reference;
        std::vector<FlatInstruction> hs;
        for (QubitId q = 0; q < def.qubits.size(); ++q) {
            FlatInstruction h;
            h.op = "h";
            h.qubits = {q};
            hs.push_back(h);
        }
        pre.instructions.insert(pre.instructions.begin(), hs.begin(), hs.end());
        pre_ref.instructions.insert(pre_ref.instructions.begin(), hs.begin(), hs.end());
        EXPECT_TRUE(equivalent(pre, pre_ref)) << def.name;
    }
}

TEST(OracleProperty, NormalizationAndDisjointReordering) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        WorkloadSpec ws;
        ws.kind = WorkloadKind::random;
        ws.seed = seed;
        ws.n = 1 + seed % 8;
        ws.length = 40;
        ws.mix.measure = 0;
        FlatProgram fp = generate(ws);
        StateVector s = simulate(fp);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
        // Reversing each greedy layer reorders only gates on disjoint qubits.
        LayeredProgram lp = stratify(fp);
        FlatProgram shuffled = fp;
        shuffled.instructions.clear();
        for (std::size_t i = lp.start; i < lp.bundles.size(); ++i) {
            auto members = lp.layer_members(i);
            for (auto it = members.rbegin(); it != members.rend(); ++it) {
                shuffled.instructions.push_back(fp.instructions[*it]);
            }
        }
        EXPECT_GE(fidelity(s, simulate(shuffled)), 1 - 1e-9) << "seed " << seed;
    }
}
