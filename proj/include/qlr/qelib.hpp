// Built-in standard gate library (the contents of qelib1.inc).
#pragma once

#include <string_view>
#include <vector>

#include "qlr/qasm.hpp"

namespace qlr {

/// Source text of the standard library, in OpenQASM syntax.
std::string_view qelib1_source();

/// Parsed standard gates. Parsed once on first use.
const std::vector<GateDef>& standard_gates();

const GateDef* find_standard_gate(std::string_view name);

/// U and CX are the only primitives of the language.
bool is_builtin_gate(std::string_view name);

}  // namespace qlr
