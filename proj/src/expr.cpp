#include <cmath>
#include <cstdio>
#include <numbers>

#include "qlr/qasm.hpp"

namespace qlr {

Expr Expr::number(double v) {
    Expr e;
    e.kind = Kind::number;
    e.value = v;
    return e;
}

Expr Expr::pi() {
    Expr e;
    e.kind = Kind::pi;
    return e;
}

Expr Expr::param(std::string n) {
    Expr e;
    e.kind = Kind::param;
    e.name = std::move(n);
    return e;
}

Expr Expr::unary(Kind k, Expr operand) {
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(operand));
    return e;
}

Expr Expr::binary(Kind k, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
}

double evaluate(const Expr& e, const Bindings& bindings) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number:
        return e.value;
    case K::pi:
        return std::numbers::pi;
    case K::param: {
        auto it = bindings.find(e.name);
        if (it == bindings.end()) {
            throw QasmError(ErrorKind::expansion, "unbound parameter '" + e.name + "'");
        }
        return it->second;
    }
    case K::negate:
        return -evaluate(e.args[0], bindings);
    case K::add:
        return evaluate(e.args[0], bindings) + evaluate(e.args[1], bindings);
    case K::sub:
        return evaluate(e.args[0], bindings) - evaluate(e.args[1], bindings);
    case K::mul:
        return evaluate(e.args[0], bindings) * evaluate(e.args[1], bindings);
    case K::div:
        return evaluate(e.args[0], bindings) / evaluate(e.args[1], bindings);
    }
    return 0.0;
}

namespace {

int precedence(Expr::Kind k) {
    using K = Expr::Kind;
    switch (k) {
    case K::add:
    case K::sub:
        return 1;
    case K::mul:
    case K::div:
        return 2;
    case K::negate:
        return 3;
    default:
        return 4;
    }
}

std::string render(const Expr& e, int parent_prec, bool right_operand) {
    using K = Expr::Kind;
    std::string out;
    switch (e.kind) {
    case K::number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", e.value);
        out = buf;
        // A negative literal needs grouping wherever a unary minus would.
        if (e.value < 0 && parent_prec > 1) {
            out = "(" + out + ")";
        }
        return out;
    }
    case K::pi:
        return "pi";
    case K::param:
        return e.name;
    case K::negate:
        out = "-" + render(e.args[0], 3, false);
        break;
    default: {
        const char* sym = e.kind == K::add ? "+" : e.kind == K::sub ? "-" : e.kind == K::mul ? "*" : "/";
        int prec = precedence(e.kind);
        out = render(e.args[0], prec, false) + sym + render(e.args[1], prec, true);
        break;
    }
    }
    int prec = precedence(e.kind);
    if (prec < parent_prec || (right_operand && prec == parent_prec)) {
        out = "(" + out + ")";
    }
    return out;
}

}  // namespace

std::string to_qasm(const Expr& e) { return render(e, 0, false); }

}  // namespace qlr
