#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>

#include "qlr/qasm.hpp"
#include "qlr/qelib.hpp"

namespace qlr {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::syntax:
        return "SyntaxError";
    case ErrorKind::unsupported_statement:
        return "UnsupportedStatement";
    case ErrorKind::undeclared_register:
        return "UndeclaredRegister";
    case ErrorKind::index_out_of_range:
        return "IndexOutOfRange";
    case ErrorKind::unknown_gate:
        return "UnknownGate";
    case ErrorKind::duplicate_declaration:
        return "DuplicateDeclaration";
    case ErrorKind::arity_mismatch:
        return "ArityMismatch";
    case ErrorKind::expansion:
        return "ExpansionError";
    }
    return "Error";
}

namespace {

std::string positioned(std::string_view msg, std::size_t line, std::size_t column) {
    if (line == 0) {
        return std::string(msg);
    }
    return std::to_string(line) + ":" + std::to_string(column) + ": " + std::string(msg);
}

}  // namespace

QasmError::QasmError(ErrorKind kind, std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(positioned(message, line, column)),
      kind_(kind),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

const GateDef* Program::find_gate(std::string_view name) const {
    for (const auto& g : gate_defs) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

const Register* Program::find_qreg(std::string_view name) const {
    for (const auto& r : qregs) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

const Register* Program::find_creg(std::string_view name) const {
    for (const auto& r : cregs) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

namespace {

enum class Tok { ident, real, integer, string, symbol, end };

struct Token {
    Tok type = Tok::end;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.pos = {line_, col_};
            if (at_end()) {
                t.type = Tok::end;
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t b = i_;
                while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                    advance();
                }
                t.type = Tok::ident;
                t.text = std::string(src_.substr(b, i_ - b));
            } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
                lex_number(t);
            } else if (c == '"') {
                advance();
                std::size_t b = i_;
                while (!at_end() && peek() != '"' && peek() != '\n') {
                    advance();
                }
                if (at_end() || peek() != '"') {
                    throw QasmError(ErrorKind::syntax, "unterminated string", t.pos.line, t.pos.column);
                }
                t.type = Tok::string;
                t.text = std::string(src_.substr(b, i_ - b));
                advance();
            } else if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
                advance();
                advance();
                t.type = Tok::symbol;
                t.text = "->";
            } else if (c == '=' && i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
                advance();
                advance();
                t.type = Tok::symbol;
                t.text = "==";
            } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
                advance();
                t.type = Tok::symbol;
                t.text = std::string(1, c);
            } else {
                throw QasmError(ErrorKind::syntax, std::string("unexpected character '") + c + "'", t.pos.line,
                                t.pos.column);
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool at_end() const { return i_ >= src_.size(); }
    char peek() const { return src_[i_]; }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (!at_end()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void lex_number(Token& t) {
        std::size_t b = i_;
        bool real = false;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            advance();
        }
        if (!at_end() && peek() == '.') {
            real = true;
            advance();
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
            }
        }
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t save_i = i_, save_col = col_;
            advance();
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                advance();
            }
            if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                real = true;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                    advance();
                }
            } else {
                i_ = save_i;
                col_ = save_col;
            }
        }
        t.type = real ? Tok::real : Tok::integer;
        t.text = std::string(src_.substr(b, i_ - b));
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, bool library_mode) : toks_(std::move(toks)), library_(library_mode) {}

    Program run() {
        if (is_ident("OPENQASM")) {
            const Token& kw = next();
            const Token& v = next();
            if ((v.type != Tok::real && v.type != Tok::integer)) {
                fail(ErrorKind::syntax, "expected version number", v.pos);
            }
            if (v.text != "2.0" && v.text != "2") {
                fail(ErrorKind::unsupported_statement, "unsupported OpenQASM version " + v.text, kw.pos);
            }
            prog_.version = "2.0";
            expect(";");
        }
        while (peek().type != Tok::end) {
            statement();
        }
        return std::move(prog_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }

    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        return t;
    }

    bool is_symbol(std::string_view s) const { return peek().type == Tok::symbol && peek().text == s; }
    bool is_ident(std::string_view s) const { return peek().type == Tok::ident && peek().text == s; }

    [[noreturn]] void fail(ErrorKind kind, const std::string& msg, SourcePos pos) const {
        throw QasmError(kind, msg, pos.line, pos.column);
    }

    std::string describe(const Token& t) const {
        return t.type == Tok::end ? std::string("end of input") : "'" + t.text + "'";
    }

    const Token& expect(std::string_view sym) {
        if (!is_symbol(sym)) {
            fail(ErrorKind::syntax, "expected '" + std::string(sym) + "', found " + describe(peek()), peek().pos);
        }
        return next();
    }

    const Token& expect_ident() {
        if (peek().type != Tok::ident) {
            fail(ErrorKind::syntax, "expected identifier, found " + describe(peek()), peek().pos);
        }
        return next();
    }

    std::size_t expect_integer() {
        if (peek().type != Tok::integer) {
            fail(ErrorKind::syntax, "expected integer, found " + describe(peek()), peek().pos);
        }
        const Token& t = next();
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc()) {
            fail(ErrorKind::syntax, "integer out of range", t.pos);
        }
        return v;
    }

    void statement() {
        const Token& t = peek();
        if (t.type != Tok::ident) {
            fail(ErrorKind::syntax, "expected statement, found " + describe(t), t.pos);
        }
        if (t.text == "include") {
            include_stmt();
        } else if (t.text == "qreg" || t.text == "creg") {
            reg_decl();
        } else if (t.text == "gate") {
            gate_decl();
        } else if (t.text == "if" || t.text == "reset" || t.text == "opaque") {
            fail(ErrorKind::unsupported_statement, "'" + t.text + "' statements are not supported", t.pos);
        } else if (t.text == "OPENQASM") {
            fail(ErrorKind::syntax, "misplaced OPENQASM header", t.pos);
        } else if (library_) {
            fail(ErrorKind::syntax, "only gate declarations are allowed here", t.pos);
        } else if (t.text == "measure") {
            measure_stmt();
        } else if (t.text == "barrier") {
            prog_.statements.emplace_back(barrier_stmt(nullptr));
        } else {
            prog_.statements.emplace_back(gate_call(nullptr));
        }
    }

    void include_stmt() {
        const Token& kw = next();
        if (peek().type != Tok::string) {
            fail(ErrorKind::syntax, "expected file name string", peek().pos);
        }
        const Token& file = next();
        expect(";");
        if (file.text != "qelib1.inc") {
            fail(ErrorKind::unsupported_statement, "cannot include '" + file.text + "'", kw.pos);
        }
        prog_.includes_qelib = true;
    }

    void reg_decl() {
        const Token& kw = next();
        const Token& name = expect_ident();
        expect("[");
        std::size_t size = expect_integer();
        expect("]");
        expect(";");
        if (size == 0) {
            fail(ErrorKind::syntax, "register size must be positive", name.pos);
        }
        if (prog_.find_qreg(name.text) || prog_.find_creg(name.text)) {
            fail(ErrorKind::duplicate_declaration, "register '" + name.text + "' already declared", name.pos);
        }
        (kw.text == "qreg" ? prog_.qregs : prog_.cregs).push_back({name.text, size});
    }

    bool gate_known(std::string_view name) const {
        return is_builtin_gate(name) || prog_.find_gate(name) != nullptr ||
               (!library_ && find_standard_gate(name) != nullptr);
    }

    void gate_decl() {
        next();
        const Token& name = expect_ident();
        if (is_builtin_gate(name.text) || prog_.find_gate(name.text) ||
            (!library_ && find_standard_gate(name.text))) {
            fail(ErrorKind::duplicate_declaration, "gate '" + name.text + "' already declared", name.pos);
        }
        GateDef def;
        def.name = name.text;
        def.pos = name.pos;
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                def.params.push_back(expect_ident().text);
                while (is_symbol(",")) {
                    next();
                    def.params.push_back(expect_ident().text);
                }
            }
            expect(")");
        }
        def.qubits.push_back(expect_ident().text);
        while (is_symbol(",")) {
            next();
            def.qubits.push_back(expect_ident().text);
        }
        std::set<std::string> seen;
        for (const auto& q : def.qubits) {
            if (!seen.insert(q).second) {
                fail(ErrorKind::duplicate_declaration, "duplicate qubit argument '" + q + "'", name.pos);
            }
        }
        expect("{");
        while (!is_symbol("}")) {
            const Token& t = peek();
            if (t.type == Tok::end) {
                fail(ErrorKind::syntax, "unterminated gate body", def.pos);
            }
            if (is_ident("barrier")) {
                def.body.emplace_back(barrier_stmt(&def));
            } else if (is_ident("measure") || is_ident("reset") || is_ident("if") || is_ident("opaque")) {
                fail(ErrorKind::unsupported_statement, "'" + t.text + "' is not allowed in a gate body", t.pos);
            } else {
                def.body.emplace_back(gate_call(&def));
            }
        }
        next();
        prog_.gate_defs.push_back(std::move(def));
    }

    // Argument: id or id[int]. Within a gate body only formal names.
    Argument argument(const GateDef* scope, bool quantum) {
        const Token& name = expect_ident();
        Argument a;
        a.reg = name.text;
        a.pos = name.pos;
        if (is_symbol("[")) {
            next();
            a.index = expect_integer();
            expect("]");
        }
        if (scope) {
            if (a.index) {
                fail(ErrorKind::syntax, "indexed argument inside gate body", a.pos);
            }
            bool formal = false;
            for (const auto& q : scope->qubits) {
                formal = formal || q == a.reg;
            }
            if (!formal) {
                fail(ErrorKind::undeclared_register, "'" + a.reg + "' is not a qubit argument of gate '" +
                                                         scope->name + "'",
                     a.pos);
            }
            return a;
        }
        const Register* reg = quantum ? prog_.find_qreg(a.reg) : prog_.find_creg(a.reg);
        if (!reg) {
            fail(ErrorKind::undeclared_register,
                 std::string(quantum ? "quantum" : "classical") + " register '" + a.reg + "' is not declared",
                 a.pos);
        }
        if (a.index && *a.index >= reg->size) {
            fail(ErrorKind::index_out_of_range,
                 "index " + std::to_string(*a.index) + " out of range for register '" + a.reg + "[" +
                     std::to_string(reg->size) + "]'",
                 a.pos);
        }
        return a;
    }

    GateCall gate_call(const GateDef* scope) {
        const Token& name = expect_ident();
        GateCall call;
        call.name = name.text;
        call.pos = name.pos;
        if (!gate_known(call.name)) {
            fail(ErrorKind::unknown_gate, "unknown gate '" + call.name + "'", name.pos);
        }
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                call.params.push_back(expression(scope));
                while (is_symbol(",")) {
                    next();
                    call.params.push_back(expression(scope));
                }
            }
            expect(")");
        }
        call.qubits.push_back(argument(scope, true));
        while (is_symbol(",")) {
            next();
            call.qubits.push_back(argument(scope, true));
        }
        expect(";");
        check_signature(call);
        return call;
    }

    void check_signature(const GateCall& call) const {
        std::size_t nparams = 0, nqubits = 0;
        if (call.name == "U") {
            nparams = 3;
            nqubits = 1;
        } else if (call.name == "CX") {
            nqubits = 2;
        } else {
            const GateDef* def = prog_.find_gate(call.name);
            if (!def && !library_) {
                def = find_standard_gate(call.name);
            }
            nparams = def->params.size();
            nqubits = def->qubits.size();
        }
        if (call.params.size() != nparams || call.qubits.size() != nqubits) {
            throw QasmError(ErrorKind::arity_mismatch,
                            "gate '" + call.name + "' takes " + std::to_string(nparams) + " parameter(s) and " +
                                std::to_string(nqubits) + " qubit(s), got " + std::to_string(call.params.size()) +
                                " and " + std::to_string(call.qubits.size()),
                            call.pos.line, call.pos.column);
        }
    }

    void measure_stmt() {
        const Token& kw = next();
        Measure m;
        m.pos = kw.pos;
        m.qubit = argument(nullptr, true);
        expect("->");
        m.bit = argument(nullptr, false);
        expect(";");
        prog_.statements.emplace_back(std::move(m));
    }

    Barrier barrier_stmt(const GateDef* scope) {
        const Token& kw = next();
        Barrier b;
        b.pos = kw.pos;
        if (!is_symbol(";")) {
            b.qubits.push_back(argument(scope, true));
            while (is_symbol(",")) {
                next();
                b.qubits.push_back(argument(scope, true));
            }
        }
        expect(";");
        return b;
    }

    // expr := term (('+'|'-') term)*
    Expr expression(const GateDef* scope) {
        Expr lhs = term(scope);
        while (is_symbol("+") || is_symbol("-")) {
            auto k = next().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
            lhs = Expr::binary(k, std::move(lhs), term(scope));
        }
        return lhs;
    }

    Expr term(const GateDef* scope) {
        Expr lhs = unary(scope);
        while (is_symbol("*") || is_symbol("/")) {
            auto k = next().text == "*" ? Expr::Kind::mul : Expr::Kind::div;
            lhs = Expr::binary(k, std::move(lhs), unary(scope));
        }
        return lhs;
    }

    Expr unary(const GateDef* scope) {
        if (is_symbol("-")) {
            next();
            return Expr::unary(Expr::Kind::negate, unary(scope));
        }
        if (is_symbol("+")) {
            next();
            return unary(scope);
        }
        return primary(scope);
    }

    Expr primary(const GateDef* scope) {
        const Token& t = peek();
        if (t.type == Tok::real || t.type == Tok::integer) {
            next();
            return Expr::number(std::strtod(t.text.c_str(), nullptr));
        }
        if (is_symbol("(")) {
            next();
            Expr e = expression(scope);
            expect(")");
            return e;
        }
        if (t.type == Tok::ident) {
            next();
            if (t.text == "pi") {
                return Expr::pi();
            }
            if (scope) {
                for (const auto& p : scope->params) {
                    if (p == t.text) {
                        return Expr::param(t.text);
                    }
                }
            }
            if (is_symbol("(")) {
                fail(ErrorKind::unsupported_statement, "function '" + t.text + "' is not supported in expressions",
                     t.pos);
            }
            fail(ErrorKind::syntax, "unknown identifier '" + t.text + "' in expression", t.pos);
        }
        fail(ErrorKind::syntax, "expected expression, found " + describe(t), t.pos);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool library_;
    Program prog_;
};

}  // namespace

Program parse(std::string_view text) { return Parser(Lexer(text).run(), false).run(); }

namespace detail {

std::vector<GateDef> parse_library(std::string_view text) {
    return Parser(Lexer(text).run(), true).run().gate_defs;
}

}  // namespace detail

}  // namespace qlr
