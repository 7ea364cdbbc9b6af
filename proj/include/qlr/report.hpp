// Serialization of lifetime reports: human table, JSON and CSV.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qlr/costsim.hpp"

namespace qlr {

/// Before/after pair for one workload (one Table-V style row).
struct Comparison {
    std::string workload;
    std::size_t qubits = 0;
    LifetimeReport before;
    LifetimeReport after;
};

std::string format_number(double v);

nlohmann::json to_json(const LifetimeReport& r, const RegisterLayout* layout = nullptr);
nlohmann::json to_json(const Comparison& c);

/// `workload,qubits,exec_before,exec_after,longest_before,longest_after,avg_before,avg_after`
std::string csv_header();
std::string csv_row(const Comparison& c);
std::string to_csv(const std::vector<Comparison>& rows);

/// `workload,qubits,mode,execution_time,depth,longest_lifetime,average_lifetime`
std::string report_csv(const std::string& workload, const LifetimeReport& r);

/// Fixed-width table with a header line stating the measurement cost.
std::string format_table(const std::vector<Comparison>& rows);
/// Per-qubit `name: before -> after` lines, skipping idle qubits.
std::string format_qubit_changes(const Comparison& c, const RegisterLayout* layout = nullptr);
std::string format_report(const std::string& workload, const LifetimeReport& r, const RegisterLayout* layout = nullptr);

}  // namespace qlr
