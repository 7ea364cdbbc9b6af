#include <gtest/gtest.h>

#include "qlr/benchgen.hpp"
#include "qlr/oracle.hpp"

using namespace qlr;

namespace {

WorkloadSpec spec(WorkloadKind k, std::size_t n = 4, std::uint64_t seed = 1) {
    WorkloadSpec ws;
    ws.kind = k;
    ws.n = n;
    ws.seed = seed;
    return ws;
}

}  // namespace

TEST(Benchgen, StaggeredHasElevenInstructions) {
    FlatProgram fp = generate(spec(WorkloadKind::staggered16));
    EXPECT_EQ(fp.instructions.size(), 11u);
    EXPECT_EQ(fp.qubit_count(), 16u);
    EXPECT_EQ(format_instruction(fp.instructions[10], fp.layout), "cx q[11],q[1];");
}

TEST(Benchgen, QftShapes) {
    FlatProgram one = generate(spec(WorkloadKind::qft, 1));
    ASSERT_EQ(one.instructions.size(), 1u);
    EXPECT_EQ(one.instructions[0].op, "h");
    for (std::size_t n : {2, 4, 9, 64}) {
        EXPECT_EQ(generate(spec(WorkloadKind::iqft, n)).instructions.size(), n + n * (n - 1) / 2);
    }
}

TEST(Benchgen, IqftIsReversedNegatedQft) {
    FlatProgram q = generate(spec(WorkloadKind::qft, 6));
    FlatProgram iq = generate(spec(WorkloadKind::iqft, 6));
    ASSERT_EQ(q.instructions.size(), iq.instructions.size());
    for (std::size_t i = 0; i < q.instructions.size(); ++i) {
        const auto& a = q.instructions[i];
        const auto& b = iq.instructions[iq.instructions.size() - 1 - i];
        EXPECT_EQ(a.op, b.op);
        EXPECT_EQ(a.qubits, b.qubits);
        ASSERT_EQ(a.params.size(), b.params.size());
        for (std::size_t k = 0; k < a.params.size(); ++k) {
            EXPECT_DOUBLE_EQ(a.params[k], -b.params[k]);
        }
    }
}

TEST(Benchgen, QftThenIqftIsIdentity) {
    for (std::size_t n = 1; n <= 8; ++n) {
        FlatProgram round = generate(spec(WorkloadKind::qft, n));
        // Start from a non-trivial basis state so the check is not vacuous.
        StateVector start(n, (std::size_t{1} << n) - 1);
        StateVector s = start;
        for (const auto& inst : generate(spec(WorkloadKind::iqft, n)).instructions) {
            round.instructions.push_back(inst);
        }
        run(round, s);
        EXPECT_GE(fidelity(s, start), 1 - 1e-9) << n;
    }
}

TEST(Benchgen, EntanglerAndBellGap) {
    FlatProgram e = generate(spec(WorkloadKind::entangler, 6));
    EXPECT_EQ(e.instructions.size(), 1u + 5u + 6u);
    WorkloadSpec ws = spec(WorkloadKind::bell_gap);
    ws.gap = 3;
    FlatProgram b = generate(ws);
    EXPECT_EQ(b.instructions.size(), 1u + 3u + 1u + 2u);
    EXPECT_EQ(format_instruction(b.instructions[4], b.layout), "cx q[1],q[0];");
}

TEST(Benchgen, RandomDeterminismAndDeadQubits) {
    WorkloadSpec ws = spec(WorkloadKind::random, 6, 42);
    ws.length = 60;
    EXPECT_EQ(generate_source(ws), generate_source(ws));
    ws.seed = 43;
    std::string other = generate_source(ws);
    ws.seed = 42;
    EXPECT_NE(generate_source(ws), other);

    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        ws.seed = seed;
        FlatProgram fp = generate(ws);
        std::vector<char> dead(fp.qubit_count(), 0);
        for (const auto& inst : fp.instructions) {
            for (QubitId q : inst.qubits) {
                ASSERT_FALSE(dead[q]) << "seed " << seed;
            }
            if (inst.is_measure()) {
                dead[inst.qubits[0]] = 1;
            }
        }
    }
}

TEST(Benchgen, InvalidSpecs) {
    EXPECT_THROW(generate(spec(WorkloadKind::qft, 0)), InvalidSpec);
    EXPECT_THROW(generate(spec(WorkloadKind::iqft, 65)), InvalidSpec);
    WorkloadSpec ws = spec(WorkloadKind::random);
    ws.mix.two = -1;
    EXPECT_THROW(generate(ws), InvalidSpec);
    EXPECT_THROW(parse_workload_kind("grover"), InvalidSpec);
    EXPECT_EQ(parse_workload_kind("iqft"), WorkloadKind::iqft);
}

TEST(Benchgen, EveryKindRoundTrips) {
    for (auto k : {WorkloadKind::early_measure, WorkloadKind::staggered16, WorkloadKind::bell_gap, WorkloadKind::qft,
                   WorkloadKind::iqft, WorkloadKind::entangler, WorkloadKind::random}) {
        FlatProgram fp = generate(spec(k, 5));
        EXPECT_TRUE(same_program(fp, load_flat(emit(fp)))) << to_string(k);
    }
}
