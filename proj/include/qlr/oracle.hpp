// Dense statevector simulator used as an independent semantic oracle for
// measurement-free programs of at most kMaxOracleQubits qubits.
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlr/qasm.hpp"

namespace qlr {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxOracleQubits = 12;

class OracleError : public std::runtime_error {
public:
    enum class Kind { too_many_qubits, unknown_gate, measurement_present };

    OracleError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Square unitary on `arity` qubits, row-major. The first operand is the
/// most significant bit of the local index.
struct GateMatrix {
    std::size_t arity = 1;
    std::vector<Amplitude> entries;

    std::size_t dim() const { return std::size_t{1} << arity; }
    Amplitude at(std::size_t r, std::size_t c) const { return entries[r * dim() + c]; }
    bool is_unitary(double tol = 1e-9) const;
};

/// Matrix for a built-in or standard gate (including the three-qubit ccx
/// and cswap), or nullopt for unknown names.
std::optional<GateMatrix> gate_matrix(std::string_view name, std::span<const double> params);

/// Names with a direct matrix entry.
const std::vector<std::string>& matrix_table();

/// Checks U^dagger U = I for every table entry at a spread of angles.
/// Returns the names that fail (empty when the table is sound).
std::vector<std::string> validate_gate_table(double tol = 1e-9);

/// Qubit q is bit q of the amplitude index.
class StateVector {
public:
    explicit StateVector(std::size_t qubits, std::size_t basis_index = 0);

    std::size_t qubits() const { return qubits_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    Amplitude operator[](std::size_t i) const { return amps_[i]; }

    void apply(const GateMatrix& m, std::span<const QubitId> operands);
    double norm_squared() const;

private:
    std::size_t qubits_;
    std::vector<Amplitude> amps_;
};

/// Applies every instruction of `fp` to `state`. Gates without a table
/// entry are evaluated through their definition in `fp.gate_defs`.
void run(const FlatProgram& fp, StateVector& state);

/// Runs `fp` from |0...0>.
StateVector simulate(const FlatProgram& fp);

/// |<a|b>|; both states must have the same width.
double fidelity(const StateVector& a, const StateVector& b);

/// True iff |<simulate(a)|simulate(b)>| >= 1 - tol.
bool equivalent(const FlatProgram& a, const FlatProgram& b, double tol = 1e-9);

/// Full unitary of a program, column k being the image of basis state k.
std::vector<Amplitude> unitary_of(const FlatProgram& fp);

}  // namespace qlr
