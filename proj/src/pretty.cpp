#include "gg/pretty.hpp"

#include <sstream>

namespace gg {

std::string quoteString(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        default:
            out += c;
        }
    }
    out += '"';
    return out;
}

// ------------------------------
// types
// ------------------------------

namespace {

// 0: arrow, 1: postfix modality chain, 2: atomic.
std::string printType(const Type &t, int prec) {
    auto wrap = [&](std::string s, int level) { return level < prec ? "(" + s + ")" : s; };
    return std::visit(
        [&](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TInt>) {
                return "Int";
            } else if constexpr (std::is_same_v<T, TString>) {
                return "String";
            } else if constexpr (std::is_same_v<T, TData>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, TFun>) {
                return wrap(printType(*x.domain, 1) + " -> " + printType(*x.codomain, 0), 0);
            } else if constexpr (std::is_same_v<T, TBox>) {
                return wrap(printType(*x.payload, 1) + " [" + x.grade.toString() + "]", 1);
            } else {
                return wrap(printType(*x.payload, 1) + " *{Trusted}", 1);
            }
        },
        t.node);
}

} // namespace

std::string formatType(const Type &t) { return printType(t, 0); }

// ------------------------------
// patterns
// ------------------------------

namespace {

std::string printPattern(const Pattern &p, bool atomic) {
    return std::visit(
        [&](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PVar>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, PWild>) {
                return "_";
            } else if constexpr (std::is_same_v<T, PInt>) {
                return std::to_string(x.value);
            } else if constexpr (std::is_same_v<T, PCtor>) {
                if (x.args.empty()) {
                    return x.name;
                }
                std::string s = x.name;
                for (const auto &arg : x.args) {
                    s += " " + printPattern(*arg, true);
                }
                return atomic ? "(" + s + ")" : s;
            } else {
                return "[" + printPattern(*x.inner, true) + "]";
            }
        },
        p.node);
}

} // namespace

std::string formatPattern(const Pattern &p) { return printPattern(p, false); }

// ------------------------------
// terms
// ------------------------------

namespace {

// Precedence levels: 0 term forms, 1 additive, 2 multiplicative,
// 3 application, 4 atom.
int opLevel(BinOp op) { return op == BinOp::Mul || op == BinOp::Div ? 2 : 1; }

bool isOpenEnded(const Term &t) {
    return std::holds_alternative<Lam>(t.node) || std::holds_alternative<LetBox>(t.node) ||
           std::holds_alternative<Endorse>(t.node) || std::holds_alternative<Case>(t.node);
}

std::string printTerm(const Term &t, int prec);

// Positions followed by a keyword (`of`, `in`, `as`) only need parentheses
// around a case, whose alternatives would otherwise run on.
std::string printBounded(const Term &t) {
    std::string s = printTerm(t, 0);
    return std::holds_alternative<Case>(t.node) ? "(" + s + ")" : s;
}

std::string printTerm(const Term &t, int prec) {
    auto wrap = [&](std::string s, int level) { return level < prec ? "(" + s + ")" : s; };
    return std::visit(
        [&](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Var>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, IntLit>) {
                return x.value < 0 ? wrap(std::to_string(x.value), 2) : std::to_string(x.value);
            } else if constexpr (std::is_same_v<T, StrLit>) {
                return quoteString(x.value);
            } else if constexpr (std::is_same_v<T, Lam>) {
                return wrap("\\" + x.param + " -> " + printTerm(*x.body, 0), 0);
            } else if constexpr (std::is_same_v<T, App>) {
                return wrap(printTerm(*x.fun, 3) + " " + printTerm(*x.arg, 4), 3);
            } else if constexpr (std::is_same_v<T, BoxIntro>) {
                return "[" + printTerm(*x.body, 0) + "]";
            } else if constexpr (std::is_same_v<T, TrustIntro>) {
                return wrap("trust " + printTerm(*x.body, 4), 0);
            } else if constexpr (std::is_same_v<T, Reveal>) {
                return wrap("reveal " + printTerm(*x.body, 4), 0);
            } else if constexpr (std::is_same_v<T, LetBox>) {
                return wrap("let [" + x.var + "] = " + printBounded(*x.bound) + " in " +
                                printTerm(*x.body, 0),
                            0);
            } else if constexpr (std::is_same_v<T, Endorse>) {
                return wrap("endorse " + printBounded(*x.bound) + " as " + x.var + " in " +
                                printTerm(*x.body, 0),
                            0);
            } else if constexpr (std::is_same_v<T, Case>) {
                std::string s = "case " + printBounded(*x.scrutinee) + " of";
                for (std::size_t i = 0; i < x.alternatives.size(); ++i) {
                    const auto &alt = x.alternatives[i];
                    bool last = i + 1 == x.alternatives.size();
                    std::string body = printTerm(*alt.body, 0);
                    if (!last && isOpenEnded(*alt.body)) {
                        body = "(" + body + ")";
                    }
                    s += " | " + formatPattern(*alt.pattern) + " -> " + body;
                }
                return wrap(s, 0);
            } else if constexpr (std::is_same_v<T, Ctor>) {
                if (x.args.empty()) {
                    return x.name;
                }
                std::string s = x.name;
                for (const auto &arg : x.args) {
                    s += " " + printTerm(*arg, 4);
                }
                return wrap(s, 3);
            } else {
                int level = opLevel(x.op);
                return wrap(printTerm(*x.lhs, level) + " " + binOpSymbol(x.op) + " " +
                                printTerm(*x.rhs, level + 1),
                            level);
            }
        },
        t.node);
}

} // namespace

std::string formatTerm(const Term &t) { return printTerm(t, 0); }

std::string formatProgram(const Program &p) {
    std::ostringstream out;
    bool first = true;
    for (const auto &decl : p.decls) {
        if (!first) {
            out << "\n";
        }
        first = false;
        if (auto *d = std::get_if<DataDecl>(&decl)) {
            out << "data " << d->name << " where\n";
            for (const auto &c : d->constructors) {
                out << "  " << c.name;
                for (const auto &field : c.fields) {
                    out << " " << printType(*field, 2);
                }
                out << ";\n";
            }
        } else {
            const auto &f = std::get<FunDecl>(decl);
            out << f.name << " : " << formatType(*f.signature) << "\n";
            out << f.name;
            for (const auto &param : f.params) {
                out << " " << printPattern(*param, true);
            }
            out << " =\n  " << formatTerm(*f.body) << "\n";
        }
    }
    return out.str();
}

} // namespace gg
