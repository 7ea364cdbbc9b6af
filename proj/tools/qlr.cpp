// qlr: command-line driver for the lifetime-reduction pipeline.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "qlr/benchgen.hpp"
#include "qlr/costsim.hpp"
#include "qlr/oracle.hpp"
#include "qlr/report.hpp"
#include "qlr/transformer.hpp"

using namespace qlr;

namespace {

enum class Format { table, json, csv };

struct ReportOptions {
    double measure_cost = 15.0;
    TimingModel model = TimingModel::layered;
    AverageDenominator denominator = AverageDenominator::declared;
    Format format = Format::table;
};

// Carries the input name so diagnostics read `file:line:col: ...`.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FlatProgram load(const std::string& path) {
    std::string text = read_input(path);
    try {
        return expand(parse(text));
    } catch (const QasmError& e) {
        throw InputError((path == "-" ? std::string("<stdin>") : path) + ":" + std::to_string(e.line()) + ":" +
                         std::to_string(e.column()) + ": " + std::string(to_string(e.kind())) + ": " + e.message());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError(path + ": cannot write file");
    }
    out << text;
}

std::string workload_name(const std::string& path) {
    return path == "-" ? "stdin" : std::filesystem::path(path).stem().string();
}

CostModel cost_model(const ReportOptions& o) {
    CostModel cm;
    cm.measure_cost = o.measure_cost;
    return cm;
}

// The serial model pairs with serial packing so the optimized order is the
// one whose sequential lifetimes are reported.
Comparison compare(const std::string& name, const FlatProgram& fp, const ReportOptions& o) {
    CostModel cm = cost_model(o);
    Comparison c;
    c.workload = name;
    c.qubits = fp.qubit_count();
    c.before = analyze(fp, cm, o.model, o.denominator);
    if (o.model == TimingModel::layered) {
        c.after = analyze_layered(transform(stratify(fp)), cm, o.denominator);
    } else {
        c.after = analyze(optimize(fp, {Packing::serial}), cm, o.model, o.denominator);
    }
    return c;
}

std::string render(const std::vector<Comparison>& rows, Format f) {
    switch (f) {
    case Format::table:
        return format_table(rows);
    case Format::csv:
        return to_csv(rows);
    case Format::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back(to_json(r));
        }
        return arr.dump(2) + "\n";
    }
    }
    return {};
}

void add_report_flags(CLI::App* cmd, ReportOptions& o) {
    const std::map<std::string, TimingModel> models{{"layered", TimingModel::layered}, {"serial", TimingModel::serial}};
    const std::map<std::string, AverageDenominator> denominators{{"declared", AverageDenominator::declared},
                                                                 {"active", AverageDenominator::active}};
    const std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};
    cmd->add_option("--measure-cost", o.measure_cost, "measurement duration in single-gate units")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--model", o.model, "timing model")->transform(CLI::CheckedTransformer(models));
    cmd->add_option("--avg-denominator", o.denominator, "qubits dividing the lifetime sum")
        ->transform(CLI::CheckedTransformer(denominators));
    cmd->add_option("--format", o.format, "report format")->transform(CLI::CheckedTransformer(formats));
}

std::vector<WorkloadSpec> default_suite() {
    std::vector<WorkloadSpec> suite;
    auto add = [&](WorkloadKind k, std::size_t n) {
        WorkloadSpec ws;
        ws.kind = k;
        ws.n = n;
        suite.push_back(ws);
    };
    add(WorkloadKind::early_measure, 3);
    add(WorkloadKind::staggered16, 16);
    add(WorkloadKind::bell_gap, 4);
    add(WorkloadKind::entangler, 6);
    for (std::size_t n : {4, 5, 8}) {
        add(WorkloadKind::qft, n);
    }
    for (std::size_t n : {4, 5, 8}) {
        add(WorkloadKind::iqft, n);
    }
    add(WorkloadKind::random, 8);
    return suite;
}

std::string suite_name(const WorkloadSpec& ws) {
    switch (ws.kind) {
    case WorkloadKind::early_measure:
    case WorkloadKind::staggered16:
        return std::string(to_string(ws.kind));
    case WorkloadKind::bell_gap:
        return "bell_gap" + std::to_string(ws.gap);
    default:
        return std::string(to_string(ws.kind)) + std::to_string(ws.n);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit lifetime reduction for OpenQASM 2.0 programs"};
    app.require_subcommand(1);

    std::string input, input2, output, dot_path;
    ReportOptions ropt;

    auto* parse_cmd = app.add_subcommand("parse", "validate and print the expanded program");
    parse_cmd->add_option("input", input, "OpenQASM file or - for stdin")->required();

    bool layers_transformed = false;
    auto* layers_cmd = app.add_subcommand("layers", "print the layered bundle format");
    layers_cmd->add_option("input", input)->required();
    layers_cmd->add_option("--dot", dot_path, "also write the dependency graph in DOT (- for stdout)");
    layers_cmd->add_flag("--transformed", layers_transformed, "show the layers after transformation");

    bool serial_packing = false;
    auto* opt_cmd = app.add_subcommand("opt", "optimize and write OpenQASM");
    opt_cmd->add_option("input", input)->required();
    opt_cmd->add_option("-o,--output", output, "output file (default stdout)");
    opt_cmd->add_flag("--serial", serial_packing, "one instruction per bundle");

    bool compare_optimized = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "lifetime report");
    analyze_cmd->add_option("input", input)->required();
    analyze_cmd->add_flag("--compare-optimized", compare_optimized, "report before and after optimization");
    add_report_flags(analyze_cmd, ropt);

    std::uint64_t seed = 1;
    auto* bench_cmd = app.add_subcommand("bench", "run the workload suite and print before/after rows");
    ReportOptions bench_opt;
    bench_opt.format = Format::csv;
    add_report_flags(bench_cmd, bench_opt);
    bench_cmd->add_option("--seed", seed, "seed for the random workload");
    bench_cmd->add_option("-o,--output", output);

    double tol = 1e-9;
    auto* verify_cmd = app.add_subcommand("verify", "check two measurement-free programs for equivalence");
    verify_cmd->add_option("a", input)->required();
    verify_cmd->add_option("b", input2)->required();
    verify_cmd->add_option("--tol", tol)->check(CLI::Range(0.0, 1.0));

    WorkloadSpec ws;
    std::string kind = "qft";
    auto* gen_cmd = app.add_subcommand("gen", "generate a workload");
    gen_cmd->add_option("--kind", kind, "early_measure|staggered16|bell_gap|qft|iqft|entangler|random")->required();
    gen_cmd->add_option("--n", ws.n, "qubit count");
    gen_cmd->add_option("--seed", ws.seed);
    gen_cmd->add_option("--gap", ws.gap, "bell_gap spacer count");
    gen_cmd->add_option("--length", ws.length, "random instruction count");
    gen_cmd->add_flag("--reuse", ws.allow_reuse, "random: allow ops after measurement");
    gen_cmd->add_option("-o,--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*parse_cmd) {
            std::cout << emit(load(input));
        } else if (*layers_cmd) {
            LayeredProgram lp = stratify(load(input));
            if (layers_transformed) {
                lp = transform(std::move(lp));
            }
            std::cout << dump_layers(lp);
            if (!dot_path.empty()) {
                write_output(dot_path, to_dot(lp));
            }
        } else if (*opt_cmd) {
            write_output(output, emit(optimize(load(input), {serial_packing ? Packing::serial : Packing::greedy})));
        } else if (*analyze_cmd) {
            FlatProgram fp = load(input);
            std::string name = workload_name(input);
            if (compare_optimized) {
                Comparison c = compare(name, fp, ropt);
                std::cout << render({c}, ropt.format);
                if (ropt.format == Format::table) {
                    std::cout << "per-qubit lifetime:\n" << format_qubit_changes(c, &fp.layout);
                }
            } else {
                auto r = analyze(fp, cost_model(ropt), ropt.model, ropt.denominator);
                switch (ropt.format) {
                case Format::table:
                    std::cout << format_report(name, r, &fp.layout);
                    break;
                case Format::json:
                    std::cout << to_json(r, &fp.layout).dump(2) << "\n";
                    break;
                case Format::csv:
                    std::cout << report_csv(name, r);
                    break;
                }
            }
        } else if (*bench_cmd) {
            auto suite = default_suite();
            std::vector<std::future<Comparison>> jobs;
            for (auto spec : suite) {
                spec.seed = seed;
                jobs.push_back(std::async(std::launch::async,
                                          [spec, &bench_opt] { return compare(suite_name(spec), generate(spec), bench_opt); }));
            }
            std::vector<Comparison> rows;
            for (auto& j : jobs) {
                rows.push_back(j.get());
            }
            write_output(output, render(rows, bench_opt.format));
        } else if (*verify_cmd) {
            double f = fidelity(simulate(load(input)), simulate(load(input2)));
            bool same = f >= 1.0 - tol;
            std::printf("%s (fidelity %.12g)\n", same ? "equivalent" : "not equivalent", f);
            return same ? 0 : 1;
        } else if (*gen_cmd) {
            ws.kind = parse_workload_kind(kind);
            write_output(output, emit(generate(ws)));
        }
    } catch (const InputError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "invalid workload: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
