// Workload generator: small hand-written circuits, QFT/IQFT, entangler, Bell-gap and
// seeded random circuits.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qlr/qasm.hpp"

namespace qlr {

enum class WorkloadKind { early_measure, staggered16, bell_gap, qft, iqft, entangler, random };

std::string_view to_string(WorkloadKind kind);
/// Throws InvalidSpec on an unknown name.
WorkloadKind parse_workload_kind(std::string_view name);

struct OpMix {
    double single = 4.0;
    double two = 3.0;
    double measure = 1.0;
};

struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::qft;
    std::size_t n = 4;
    std::uint64_t seed = 1;
    std::size_t gap = 4;       // bell_gap spacers
    OpMix mix;                 // random
    std::size_t length = 40;   // random instruction count
    bool allow_reuse = false;  // random: ops after a qubit's measurement
};

class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// OpenQASM text for the workload. Deterministic in the spec.
std::string generate_source(const WorkloadSpec& ws);

/// parse + expand of generate_source.
FlatProgram generate(const WorkloadSpec& ws);

}  // namespace qlr
