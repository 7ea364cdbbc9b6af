// Acceptance driver. `acceptance` runs every criterion and prints one line
// per criterion; `acceptance <n>` runs criterion n only. Exit status is 0
// iff every selected criterion passed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qlr/benchgen.hpp"
#include "qlr/costsim.hpp"
#include "qlr/oracle.hpp"
#include "qlr/transformer.hpp"

using namespace qlr;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed checks; the first few are kept for the report line.
struct Checker {
    Outcome out;
    int failures = 0;

    void expect(bool cond, const std::string& what) {
        if (cond) {
            return;
        }
        out.pass = false;
        if (failures++ < 3) {
            out.detail += (out.detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string& name) { return read_file(std::string(QLR_FIXTURES) + "/" + name); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

CostModel with_m(double m) {
    CostModel cm;
    cm.measure_cost = m;
    return cm;
}

// Per-qubit id subsequences of `order` equal the original program order.
bool per_qubit_order_kept(const LayeredProgram& original, const std::vector<InstrId>& order) {
    std::vector<std::vector<InstrId>> seen(original.qubit_count());
    for (InstrId id : order) {
        for (QubitId q : original.instructions[id].qubits) {
            seen[q].push_back(id);
        }
    }
    return seen == original.qubit_ops;
}

bool bundles_disjoint(const LayeredProgram& lp) {
    for (const auto& b : lp.bundles) {
        std::vector<char> used(lp.qubit_count(), 0);
        for (InstrId id : b.members) {
            for (QubitId q : lp.instructions[id].qubits) {
                if (used[q]) {
                    return false;
                }
                used[q] = 1;
            }
        }
    }
    return true;
}

std::size_t non_empty(const LayeredProgram& lp) {
    return static_cast<std::size_t>(
        std::count_if(lp.bundles.begin(), lp.bundles.end(), [](const Bundle& b) { return !b.empty(); }));
}

WorkloadSpec random_spec(std::uint64_t seed, bool measures) {
    WorkloadSpec ws;
    ws.kind = WorkloadKind::random;
    ws.seed = seed;
    ws.n = 1 + seed % 8;
    ws.length = 1 + (seed * 7919) % 60;
    ws.mix.measure = measures ? 1.0 : 0.0;
    ws.allow_reuse = measures && seed % 2 == 0;
    return ws;
}

Outcome staggered_golden() {
    Checker c;
    FlatProgram fp = expand(parse(fixture("staggered16.qasm")));
    CostModel cm;
    LayeredProgram before = stratify(fp);
    auto rb = analyze_layered(before, cm);
    c.expect(rb.depth == 7, "depth before " + std::to_string(rb.depth));
    c.expect(rb.execution_time == 11, "exec before " + fmt(rb.execution_time));
    c.expect(rb.per_qubit.at(1) == 11, "q[1] before " + fmt(rb.per_qubit.at(1)));

    LayeredProgram after = transform(before);
    auto ra = analyze_layered(after, cm);
    c.expect(ra.depth == 5, "depth after " + std::to_string(ra.depth));
    c.expect(ra.execution_time == 8, "exec after " + fmt(ra.execution_time));
    c.expect(ra.per_qubit.at(1) == 5, "q[1] after " + fmt(ra.per_qubit.at(1)));
    c.expect(emit(to_sequence(after)) == fixture("staggered16_opt.qasm"), "emitted order differs from staggered16_opt.qasm");
    if (c.out.pass) {
        c.out.detail = "depth 7->5, exec 11->8, q[1] 11->5, order matches staggered16_opt";
    }
    return c.out;
}

Outcome early_measure_serial() {
    Checker c;
    FlatProgram fp = expand(parse(fixture("early_measure.qasm")));
    FlatProgram opt = optimize(fp, {Packing::serial});
    c.expect(same_program(opt, expand(parse(fixture("early_measure_serial.qasm")))), "optimized program differs from early_measure_serial.qasm");
    const QubitId a1 = fp.layout.qubit_offset("a") + 1;
    for (double m : {15.0, 50.0}) {
        double before = serial_lifetime(fp, a1, with_m(m));
        double after = serial_lifetime(opt, a1, with_m(m));
        c.expect(before == 3 + 2 * m, "m=" + fmt(m) + " before " + fmt(before));
        c.expect(after == 3 + m, "m=" + fmt(m) + " after " + fmt(after));
    }
    if (c.out.pass) {
        c.out.detail = "a[1]: 33->18 at m=15, 103->53 at m=50";
    }
    return c.out;
}

Outcome adjust_walkthrough() {
    Checker c;
    LayeredProgram lp = stratify(expand(parse(fixture("staggered16.qasm"))));
    // A = h q[1], B = cx q[1],q[2], C = cx q[11],q[1]
    const InstrId a = 0, b = 6, cc = 10;
    c.expect(lp.layer_of(a) == 1 && lp.layer_of(b) == 4 && lp.layer_of(cc) == 7, "unexpected initial layers");
    Transformer t(lp);
    t.adjust(a);
    c.expect(lp.layer_of(cc) == 7, "L'(C)=" + std::to_string(lp.layer_of(cc)));
    c.expect(lp.layer_of(b) == 6, "L'(B)=" + std::to_string(lp.layer_of(b)));
    c.expect(lp.layer_of(a) == 5, "L'(A)=" + std::to_string(lp.layer_of(a)));
    if (c.out.pass) {
        c.out.detail = "L'(C)=7, L'(B)=6, L'(A)=5";
    }
    return c.out;
}

Outcome semantics() {
    Checker c;
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        FlatProgram fp = generate(random_spec(seed, false));
        LayeredProgram before = stratify(fp);
        LayeredProgram after = transform(before);
        double f = fidelity(simulate(fp), simulate(to_sequence(after)));
        worst = std::min(worst, f);
        c.expect(f >= 1 - 1e-9, "seed " + std::to_string(seed) + " fidelity " + fmt(f));
        c.expect(per_qubit_order_kept(before, emission_order(after)), "seed " + std::to_string(seed) + " order");
    }
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        FlatProgram fp = generate(random_spec(seed, true));
        LayeredProgram before = stratify(fp);
        LayeredProgram after = transform(before);
        c.expect(per_qubit_order_kept(before, emission_order(after)),
                 "measured seed " + std::to_string(seed) + " order");
    }
    if (c.out.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "500 unitary programs, min fidelity 1-%.1e; 1000 measured programs", 1 - worst);
        c.out.detail = buf;
    }
    return c.out;
}

Outcome structure() {
    Checker c;
    auto check = [&](const WorkloadSpec& ws) {
        LayeredProgram before = stratify(generate(ws));
        LayeredProgram after = transform(before);
        std::string tag = "seed " + std::to_string(ws.seed) + (ws.mix.measure > 0 ? "m" : "");
        c.expect(bundles_disjoint(before) && bundles_disjoint(after), tag + " overlapping bundle");
        c.expect(non_empty(after) <= non_empty(before), tag + " bundle count grew");
        c.expect(depth(after) <= depth(before), tag + " depth grew");
        bool monotone = true;
        for (InstrId id = 0; id < before.instructions.size(); ++id) {
            monotone = monotone && after.layer_of(id) >= before.layer_of(id);
        }
        c.expect(monotone, tag + " instruction moved to an earlier layer");
    };
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        check(random_spec(seed, false));
    }
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        check(random_spec(seed, true));
    }
    if (c.out.pass) {
        c.out.detail = "1500 programs: disjoint bundles, bundle count and depth non-increasing, layers non-decreasing";
    }
    return c.out;
}

Outcome iqft_trend() {
    Checker c;
    std::string summary;
    for (std::size_t n : {4, 8, 16, 32}) {
        WorkloadSpec ws;
        ws.kind = WorkloadKind::iqft;
        ws.n = n;
        FlatProgram fp = generate(ws);
        auto before = analyze(fp, CostModel{}, TimingModel::layered);
        auto after = analyze_layered(transform(stratify(fp)), CostModel{});
        double dl = 1 - after.longest_lifetime / before.longest_lifetime;
        double da = 1 - after.average_lifetime / before.average_lifetime;
        summary += (summary.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + " longest " +
                   fmt(before.longest_lifetime) + "->" + fmt(after.longest_lifetime) + " avg " +
                   fmt(before.average_lifetime) + "->" + fmt(after.average_lifetime);
        c.expect(dl >= 0.2, "N=" + std::to_string(n) + " longest reduced " + fmt(100 * dl) + "%");
        c.expect(da >= 0.2, "N=" + std::to_string(n) + " average reduced " + fmt(100 * da) + "%");
    }
    c.out.detail = c.out.pass ? summary : c.out.detail + " (" + summary + ")";
    return c.out;
}

double best_optimize_seconds(std::size_t n) {
    WorkloadSpec ws;
    ws.kind = WorkloadKind::iqft;
    ws.n = n;
    FlatProgram fp = generate(ws);
    double best = 1e9;
    for (int rep = 0; rep < 5; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        FlatProgram out = optimize(fp);
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        if (out.instructions.size() != fp.instructions.size()) {
            return 1e9;
        }
    }
    return best;
}

Outcome complexity() {
    Checker c;
    WorkloadSpec ws;
    ws.kind = WorkloadKind::iqft;
    ws.n = 64;
    std::size_t count = generate(ws).instructions.size();
    c.expect(count == 2080, "iqft(64) has " + std::to_string(count) + " instructions");
    double t32 = best_optimize_seconds(32);
    double t64 = best_optimize_seconds(64);
    double ratio = t64 / std::max(t32, 1e-6);
    c.expect(t64 < 1.0, "iqft(64) took " + fmt(t64) + " s");
    c.expect(ratio < 10.0, "32->64 ratio " + fmt(ratio));
    char buf[96];
    std::snprintf(buf, sizeof buf, "iqft(64) %.2f ms, 32->64 ratio %.2f", t64 * 1e3, ratio);
    c.out.detail = c.out.pass ? buf : c.out.detail + " (" + buf + ")";
    return c.out;
}

FlatProgram concat(FlatProgram a, const FlatProgram& b) {
    for (auto inst : b.instructions) {
        inst.id = a.instructions.size();
        a.instructions.push_back(std::move(inst));
    }
    return a;
}

Outcome oracle_checks() {
    Checker c;
    auto bad = validate_gate_table(1e-9);
    c.expect(bad.empty(), "non-unitary table entries: " + (bad.empty() ? std::string() : bad.front()));

    for (std::size_t n = 1; n <= 8; ++n) {
        WorkloadSpec ws;
        ws.kind = WorkloadKind::qft;
        ws.n = n;
        FlatProgram fwd = generate(ws);
        ws.kind = WorkloadKind::iqft;
        FlatProgram round = concat(fwd, generate(ws));
        auto u = unitary_of(round);
        std::size_t dim = std::size_t{1} << n;
        Amplitude phase = u[0];
        double err = std::abs(std::abs(phase) - 1);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t col = 0; col < dim; ++col) {
                Amplitude expected = r == col ? phase : Amplitude{0.0};
                err = std::max(err, std::abs(u[r * dim + col] - expected));
            }
        }
        c.expect(err <= 1e-9, "qft*iqft(" + std::to_string(n) + ") off identity by " + fmt(err));
    }

    FlatProgram bell = expand(parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"));
    StateVector s = simulate(bell);
    const double r = 1 / std::sqrt(2.0);
    double err = std::abs(s[0] - r) + std::abs(s[1]) + std::abs(s[2]) + std::abs(s[3] - r);
    c.expect(err <= 1e-9, "Bell state error " + fmt(err));
    if (c.out.pass) {
        c.out.detail = std::to_string(matrix_table().size()) +
                       " gate matrices unitary; qft*iqft = I for n<=8; Bell state exact";
    }
    return c.out;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"staggered16 golden path", staggered_golden},
        {"serial packing lifetime", early_measure_serial},
        {"adjust walk-through", adjust_walkthrough},
        {"semantics preservation", semantics},
        {"structural invariants", structure},
        {"iqft lifetime reduction >= 20%", iqft_trend},
        {"complexity smoke", complexity},
        {"oracle self-checks", oracle_checks},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t first = 1, last = criteria().size();
    if (argc > 1) {
        first = last = std::stoul(argv[1]);
        if (first < 1 || first > criteria().size()) {
            std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria().size());
            return 2;
        }
    }
    bool all = true;
    for (std::size_t i = first; i <= last; ++i) {
        const auto& cr = criteria()[i - 1];
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i, cr.name, o.detail.c_str());
    }
    return all ? 0 : 1;
}
