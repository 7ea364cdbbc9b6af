// Timing model: execution time and per-qubit lifetime of a program, in
// units of one single-qubit gate duration.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlr/layering.hpp"

namespace qlr {

struct CostModel {
    double single_qubit_cost = 1.0;
    double two_qubit_cost = 2.0;
    double measure_cost = 15.0;
    double barrier_cost = 0.0;

    /// Throws std::invalid_argument on a negative entry.
    void validate() const;
    CostModel scaled(double k) const;
};

double instruction_cost(const FlatInstruction& inst, const CostModel& cm);

/// Layered model: bundles execute one after another; a bundle takes as
/// long as its slowest member.
/// Serial model: instructions execute one at a time in program order.
enum class TimingModel { layered, serial };

/// Which qubit count divides the lifetime sum.
enum class AverageDenominator { declared, active };

struct LifetimeReport {
    TimingModel mode = TimingModel::layered;
    double execution_time = 0.0;
    std::size_t depth = 0;
    std::map<QubitId, double> per_qubit;
    double longest_lifetime = 0.0;
    double average_lifetime = 0.0;
    AverageDenominator average_denominator = AverageDenominator::declared;
    std::size_t declared_qubits = 0;
    std::size_t active_qubits = 0;
    double measure_cost = 0.0;
};

/// Cost of one bundle: the maximum of its member costs, 0 when empty.
double layer_cost(const LayeredProgram& lp, const Bundle& b, const CostModel& cm);

/// Sum of layer costs over non-empty bundles from `start`.
double execution_time(const LayeredProgram& lp, const CostModel& cm);

/// Sum over q's superposition segments of the layer costs the segment
/// spans. A segment opens at the first instruction on q while q is GROUND
/// and closes at the next measurement of q (inclusive), or at q's last
/// instruction. Barriers neither open nor close segments.
double layered_lifetime(const LayeredProgram& lp, QubitId q, const CostModel& cm);

/// Same segment rule on the program order, summing every instruction's
/// cost inside the segment.
double serial_lifetime(const FlatProgram& fp, QubitId q, const CostModel& cm);

/// Lifetime report for `lp` as it stands (already stratified/transformed).
LifetimeReport analyze_layered(const LayeredProgram& lp, const CostModel& cm,
                               AverageDenominator denominator = AverageDenominator::declared);

/// Stratifies (greedy) for the layered model; sums sequentially for the
/// serial model, whose depth is the instruction count.
LifetimeReport analyze(const FlatProgram& fp, const CostModel& cm, TimingModel mode,
                       AverageDenominator denominator = AverageDenominator::declared);

}  // namespace qlr
