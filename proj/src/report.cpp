#include <cstdio>
#include <iomanip>
#include <sstream>

#include "qlr/report.hpp"

namespace qlr {

namespace {

const char* mode_name(TimingModel m) { return m == TimingModel::layered ? "layered" : "serial"; }

const char* denominator_name(AverageDenominator d) {
    return d == AverageDenominator::declared ? "declared" : "active";
}

std::string pad(const std::string& s, std::size_t width) {
    std::ostringstream os;
    os << std::setw(static_cast<int>(width)) << s;
    return os.str();
}

// Tables trade precision for alignment.
std::string cell(double v, std::size_t width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return pad(buf, width);
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

nlohmann::json to_json(const LifetimeReport& r, const RegisterLayout* layout) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [q, v] : r.per_qubit) {
        per[layout ? layout->qubit_name(q) : std::to_string(q)] = v;
    }
    return {
        {"mode", mode_name(r.mode)},
        {"measure_cost", r.measure_cost},
        {"execution_time", r.execution_time},
        {"depth", r.depth},
        {"longest_lifetime", r.longest_lifetime},
        {"average_lifetime", r.average_lifetime},
        {"average_denominator", denominator_name(r.average_denominator)},
        {"declared_qubits", r.declared_qubits},
        {"active_qubits", r.active_qubits},
        {"per_qubit", per},
    };
}

nlohmann::json to_json(const Comparison& c) {
    return {
        {"workload", c.workload},
        {"qubits", c.qubits},
        {"exec_before", c.before.execution_time},
        {"exec_after", c.after.execution_time},
        {"longest_before", c.before.longest_lifetime},
        {"longest_after", c.after.longest_lifetime},
        {"avg_before", c.before.average_lifetime},
        {"avg_after", c.after.average_lifetime},
    };
}

std::string csv_header() {
    return "workload,qubits,exec_before,exec_after,longest_before,longest_after,avg_before,avg_after";
}

std::string csv_row(const Comparison& c) {
    std::ostringstream os;
    os << c.workload << "," << c.qubits << "," << format_number(c.before.execution_time) << ","
       << format_number(c.after.execution_time) << "," << format_number(c.before.longest_lifetime) << ","
       << format_number(c.after.longest_lifetime) << "," << format_number(c.before.average_lifetime) << ","
       << format_number(c.after.average_lifetime);
    return os.str();
}

std::string to_csv(const std::vector<Comparison>& rows) {
    std::string out = csv_header() + "\n";
    for (const auto& r : rows) {
        out += csv_row(r) + "\n";
    }
    return out;
}

std::string report_csv(const std::string& workload, const LifetimeReport& r) {
    std::ostringstream os;
    os << "workload,qubits,mode,execution_time,depth,longest_lifetime,average_lifetime\n";
    os << workload << "," << r.declared_qubits << "," << mode_name(r.mode) << "," << format_number(r.execution_time)
       << "," << r.depth << "," << format_number(r.longest_lifetime) << "," << format_number(r.average_lifetime)
       << "\n";
    return os.str();
}

std::string format_table(const std::vector<Comparison>& rows) {
    std::ostringstream os;
    double m = rows.empty() ? 0.0 : rows.front().before.measure_cost;
    const char* mode = rows.empty() ? "layered" : mode_name(rows.front().before.mode);
    os << "# durations in tu (single-qubit gate = 1, two-qubit gate = 2, measure = " << format_number(m)
       << "), " << mode << " model\n";
    os << pad("workload", 14) << pad("qubits", 8) << pad("exec", 11) << pad("exec'", 11) << pad("longest", 11)
       << pad("longest'", 11) << pad("avg", 11) << pad("avg'", 11) << "\n";
    for (const auto& r : rows) {
        os << pad(r.workload, 14) << pad(std::to_string(r.qubits), 8) << cell(r.before.execution_time, 11)
           << cell(r.after.execution_time, 11) << cell(r.before.longest_lifetime, 11)
           << cell(r.after.longest_lifetime, 11) << cell(r.before.average_lifetime, 11)
           << cell(r.after.average_lifetime, 11) << "\n";
    }
    return os.str();
}

std::string format_qubit_changes(const Comparison& c, const RegisterLayout* layout) {
    std::ostringstream os;
    for (const auto& [q, before] : c.before.per_qubit) {
        double after = c.after.per_qubit.count(q) ? c.after.per_qubit.at(q) : 0.0;
        if (before == 0 && after == 0) {
            continue;
        }
        os << "  " << (layout ? layout->qubit_name(q) : "q" + std::to_string(q)) << ": " << format_number(before)
           << " -> " << format_number(after) << "\n";
    }
    return os.str();
}

std::string format_report(const std::string& workload, const LifetimeReport& r, const RegisterLayout* layout) {
    std::ostringstream os;
    os << "# " << workload << ": " << mode_name(r.mode) << " model, durations in tu (measure = "
       << format_number(r.measure_cost) << ")\n";
    os << "execution time:   " << format_number(r.execution_time) << "\n";
    os << "depth:            " << r.depth << "\n";
    os << "longest lifetime: " << format_number(r.longest_lifetime) << "\n";
    os << "average lifetime: " << format_number(r.average_lifetime) << " (over "
       << (r.average_denominator == AverageDenominator::declared ? r.declared_qubits : r.active_qubits) << " "
       << denominator_name(r.average_denominator) << " qubits)\n";
    for (const auto& [q, v] : r.per_qubit) {
        os << "  " << (layout ? layout->qubit_name(q) : "q" + std::to_string(q)) << ": " << format_number(v) << "\n";
    }
    return os.str();
}

}  // namespace qlr
