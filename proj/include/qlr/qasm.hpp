// OpenQASM 2.0 front end: parsing, gate expansion and emission of the
// flat instruction form consumed by the layering and transformer passes.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qlr {

using QubitId = std::size_t;
using ClbitId = std::size_t;
using InstrId = std::size_t;

enum class ErrorKind {
    syntax,
    unsupported_statement,
    undeclared_register,
    index_out_of_range,
    unknown_gate,
    duplicate_declaration,
    arity_mismatch,
    expansion,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by the front end. `line`/`column` are 1-based; 0 means the
/// error has no source position (e.g. raised while expanding a FlatProgram).
class QasmError : public std::runtime_error {
public:
    QasmError(ErrorKind kind, std::string message, std::size_t line = 0, std::size_t column = 0);

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// ---------------------------------------------------------------------------
// Angle expressions

struct Expr {
    enum class Kind { number, pi, param, negate, add, sub, mul, div };

    Kind kind = Kind::number;
    double value = 0.0;       // number
    std::string name;         // param
    std::vector<Expr> args;   // operands of negate / binary ops

    static Expr number(double v);
    static Expr pi();
    static Expr param(std::string n);
    static Expr unary(Kind k, Expr operand);
    static Expr binary(Kind k, Expr lhs, Expr rhs);
};

using Bindings = std::map<std::string, double, std::less<>>;

/// Evaluates `e`; parameter names are looked up in `bindings`.
double evaluate(const Expr& e, const Bindings& bindings = {});

/// Renders an expression back to OpenQASM syntax. Numbers use 12
/// significant digits.
std::string to_qasm(const Expr& e);

// ---------------------------------------------------------------------------
// Syntax tree

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// `reg` or `reg[index]`. Inside gate bodies only the bare form is legal.
struct Argument {
    std::string reg;
    std::optional<std::size_t> index;
    SourcePos pos;

    bool operator==(const Argument&) const = default;
};

struct GateCall {
    std::string name;
    std::vector<Expr> params;
    std::vector<Argument> qubits;
    SourcePos pos;
};

struct Measure {
    Argument qubit;
    Argument bit;
    SourcePos pos;
};

/// Empty `qubits` means every declared qubit.
struct Barrier {
    std::vector<Argument> qubits;
    SourcePos pos;
};

using Statement = std::variant<GateCall, Measure, Barrier>;
using GateBodyStatement = std::variant<GateCall, Barrier>;

struct GateDef {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> qubits;
    std::vector<GateBodyStatement> body;
    SourcePos pos;
};

struct Register {
    std::string name;
    std::size_t size = 0;

    bool operator==(const Register&) const = default;
};

struct Program {
    std::string version = "2.0";
    bool includes_qelib = false;
    std::vector<Register> qregs;
    std::vector<Register> cregs;
    std::vector<GateDef> gate_defs;  // user declared, in declaration order
    std::vector<Statement> statements;

    const GateDef* find_gate(std::string_view name) const;
    const Register* find_qreg(std::string_view name) const;
    const Register* find_creg(std::string_view name) const;
};

/// Parses OpenQASM 2.0 text. `include "qelib1.inc";` resolves to the
/// built-in standard gate table (see qelib.hpp).
Program parse(std::string_view text);

// ---------------------------------------------------------------------------
// Flat form

/// Register tables shared by flat and layered programs. Qubit and clbit
/// ids are assigned contiguously in declaration order.
struct RegisterLayout {
    std::vector<Register> qregs;
    std::vector<Register> cregs;

    std::size_t qubit_count() const;
    std::size_t clbit_count() const;
    std::size_t qubit_offset(std::string_view reg) const;
    std::size_t clbit_offset(std::string_view reg) const;
    /// "q[3]" style name for a global qubit id.
    std::string qubit_name(QubitId q) const;
    std::string clbit_name(ClbitId c) const;

    bool operator==(const RegisterLayout&) const = default;
};

enum class OpClass { single, two, measure, barrier };

struct FlatInstruction {
    InstrId id = 0;
    std::string op;
    std::vector<double> params;
    std::vector<QubitId> qubits;  // S(instruction); order keeps operand roles
    std::vector<ClbitId> clbits;  // measure only
    int seq = -1;                 // layer index once stratified
    bool visited = false;

    OpClass op_class() const;
    bool is_measure() const { return op == "measure"; }
    bool is_barrier() const { return op == "barrier"; }
    bool touches(QubitId q) const;
    bool overlaps(const FlatInstruction& other) const;

    bool operator==(const FlatInstruction&) const = default;
};

struct FlatProgram {
    RegisterLayout layout;
    /// User-declared gates; atomic 1- and 2-qubit instructions may refer
    /// to them by name.
    std::vector<GateDef> gate_defs;
    std::vector<FlatInstruction> instructions;

    std::size_t qubit_count() const { return layout.qubit_count(); }
    const GateDef* find_gate(std::string_view name) const;
};

/// Structural equality on registers, gate signatures and instructions
/// (op, params, qubits, clbits, id). Parameters match when they agree to
/// `param_tolerance` relative error; the default absorbs the 12-digit
/// rounding of emit.
bool same_program(const FlatProgram& a, const FlatProgram& b, double param_tolerance = 1e-11);

/// Expands register broadcasts and gates acting on three or more qubits.
/// One- and two-qubit gate calls stay atomic under their own names.
FlatProgram expand(const Program& program);

/// Emits OpenQASM 2.0 text for `fp`, one statement per instruction.
std::string emit(const FlatProgram& fp);

/// One statement in emitted form, without the trailing newline.
std::string format_instruction(const FlatInstruction& inst, const RegisterLayout& layout);

/// parse + expand.
FlatProgram load_flat(std::string_view text);

}  // namespace qlr
