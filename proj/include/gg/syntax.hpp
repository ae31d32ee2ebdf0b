#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gg/semiring.hpp"
#include "gg/source.hpp"

namespace gg {

// ------------------------------
// types
// ------------------------------

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct TInt {};
struct TString {};
struct TData {
    std::string name;
};
struct TFun {
    TypePtr domain;
    TypePtr codomain;
};
/// Graded necessity `A [r]`.
struct TBox {
    Grade grade;
    TypePtr payload;
};
/// Integrity modality `A *{Trusted}`. Trusted is the only star grade, so it
/// is implied by the node rather than stored.
struct TStar {
    TypePtr payload;
};

struct Type {
    std::variant<TInt, TString, TData, TFun, TBox, TStar> node;
};

namespace ty {
TypePtr intType();
TypePtr stringType();
TypePtr data(std::string name);
TypePtr fun(TypePtr domain, TypePtr codomain);
TypePtr box(Grade grade, TypePtr payload);
TypePtr star(TypePtr payload);
} // namespace ty

bool typeEq(const Type &a, const Type &b);
std::string formatType(const Type &t);

// ------------------------------
// patterns
// ------------------------------

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct PVar {
    std::string name;
};
struct PWild {};
struct PInt {
    std::int64_t value;
};
struct PCtor {
    std::string name;
    std::vector<PatternPtr> args;
};
struct PBox {
    PatternPtr inner;
};

struct Pattern {
    std::variant<PVar, PWild, PInt, PCtor, PBox> node;
    SourceSpan span;
};

namespace pat {
PatternPtr var(std::string name, SourceSpan span = {});
PatternPtr wild(SourceSpan span = {});
PatternPtr intLit(std::int64_t value, SourceSpan span = {});
PatternPtr ctor(std::string name, std::vector<PatternPtr> args, SourceSpan span = {});
PatternPtr box(PatternPtr inner, SourceSpan span = {});
} // namespace pat

bool patternEq(const Pattern &a, const Pattern &b);
/// Variables bound by the pattern, in left-to-right order (duplicates kept).
std::vector<std::string> patternVars(const Pattern &p);

// ------------------------------
// terms
// ------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class BinOp { Add, Sub, Mul, Div, Eq, Concat };

struct Var {
    std::string name;
};
struct IntLit {
    std::int64_t value;
};
struct StrLit {
    std::string value;
};
struct Lam {
    std::string param;
    TermPtr body;
};
struct App {
    TermPtr fun;
    TermPtr arg;
};
/// Promotion `[t]`.
struct BoxIntro {
    TermPtr body;
};
/// Necessitation `trust t`.
struct TrustIntro {
    TermPtr body;
};
/// `let [var] = bound in body`.
struct LetBox {
    std::string var;
    TermPtr bound;
    TermPtr body;
};
struct Reveal {
    TermPtr body;
};
/// `endorse bound as var in body`.
struct Endorse {
    TermPtr bound;
    std::string var;
    TermPtr body;
};
struct Alternative {
    PatternPtr pattern;
    TermPtr body;
};
struct Case {
    TermPtr scrutinee;
    std::vector<Alternative> alternatives;
};
struct Ctor {
    std::string name;
    std::vector<TermPtr> args;
};
struct PrimOp {
    BinOp op;
    TermPtr lhs;
    TermPtr rhs;
};

struct Term {
    std::variant<Var, IntLit, StrLit, Lam, App, BoxIntro, TrustIntro, LetBox, Reveal, Endorse,
                 Case, Ctor, PrimOp>
        node;
    SourceSpan span;
};

namespace term {
TermPtr var(std::string name, SourceSpan span = {});
TermPtr intLit(std::int64_t value, SourceSpan span = {});
TermPtr strLit(std::string value, SourceSpan span = {});
TermPtr lam(std::string param, TermPtr body, SourceSpan span = {});
TermPtr app(TermPtr fun, TermPtr arg, SourceSpan span = {});
TermPtr box(TermPtr body, SourceSpan span = {});
TermPtr trust(TermPtr body, SourceSpan span = {});
TermPtr letBox(std::string var, TermPtr bound, TermPtr body, SourceSpan span = {});
TermPtr reveal(TermPtr body, SourceSpan span = {});
TermPtr endorse(TermPtr bound, std::string var, TermPtr body, SourceSpan span = {});
TermPtr caseOf(TermPtr scrutinee, std::vector<Alternative> alternatives, SourceSpan span = {});
TermPtr ctor(std::string name, std::vector<TermPtr> args, SourceSpan span = {});
TermPtr prim(BinOp op, TermPtr lhs, TermPtr rhs, SourceSpan span = {});
} // namespace term

/// Structural equality; spans are ignored.
bool termEq(const Term &a, const Term &b);

std::set<std::string> freeVars(const Term &t);

/// Replaces free occurrences of `name` in `t` by `replacement`. The
/// replacement must be closed, so no binder can capture it.
TermPtr subst(const TermPtr &t, const std::string &name, const TermPtr &replacement);

const char *binOpSymbol(BinOp op);

// ------------------------------
// declarations
// ------------------------------

struct Constructor {
    std::string name;
    std::vector<TypePtr> fields;
    SourceSpan span;
};

struct DataDecl {
    std::string name;
    std::vector<Constructor> constructors;
    SourceSpan span;
};

struct FunDecl {
    std::string name;
    TypePtr signature;
    std::vector<PatternPtr> params;
    TermPtr body;
    SourceSpan signatureSpan;
    SourceSpan span;
};

using Decl = std::variant<DataDecl, FunDecl>;

struct Program {
    std::vector<Decl> decls;

    const FunDecl *findFunction(const std::string &name) const;
};

bool programEq(const Program &a, const Program &b);

} // namespace gg
