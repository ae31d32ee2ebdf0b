#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gg/syntax.hpp"

namespace gg {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Globals;

/// Immutable local environment plus the read-only table of top-level
/// definitions. Local bindings shadow globals.
class Env {
public:
    Env();
    explicit Env(std::shared_ptr<const Globals> globals);

    Env bind(std::string name, ValuePtr value) const;
    ValuePtr lookupLocal(const std::string &name) const;
    const Globals &globals() const { return *globals_; }
    const std::shared_ptr<const Globals> &globalsPtr() const { return globals_; }

private:
    struct Node {
        std::string name;
        ValuePtr value;
        std::shared_ptr<const Node> next;
    };

    std::shared_ptr<const Node> head_;
    std::shared_ptr<const Globals> globals_;
};

struct IntV {
    std::int64_t value;
};
struct StrV {
    std::string value;
};
struct CtorV {
    std::string name;
    std::vector<ValuePtr> args;
};
/// Runtime tag of a `[t]` value.
struct BoxV {
    ValuePtr payload;
};
/// Runtime tag of a trusted value.
struct StarV {
    ValuePtr payload;
};
struct ClosV {
    Env env;
    std::string param;
    TermPtr body;
};

struct Value {
    std::variant<IntV, StrV, CtorV, BoxV, StarV, ClosV> node;
};

namespace val {
ValuePtr integer(std::int64_t n);
ValuePtr string(std::string s);
ValuePtr ctor(std::string name, std::vector<ValuePtr> args);
ValuePtr box(ValuePtr payload);
ValuePtr star(ValuePtr payload);
} // namespace val

/// Structural equality. Closures are never equal, not even to themselves.
bool valueEq(const Value &a, const Value &b);

/// Integers bare, strings quoted, `[v]` for boxes, `*v` for trusted values.
std::string formatValue(const Value &v);

enum class RuntimeErrorKind {
    DivisionByZero,
    NonExhaustiveMatch,
    TagMismatch,
    UnboundVariable,
    UnknownMain,
    ArityMismatch,
    DepthExceeded,
};

const char *runtimeErrorName(RuntimeErrorKind kind);

class RuntimeError : public std::runtime_error {
public:
    RuntimeError(RuntimeErrorKind kind, const std::string &message, SourceSpan span = {});

    RuntimeErrorKind kind;
    SourceSpan span;
};

/// Top-level definitions, each lowered to a closed term: functions with
/// parameters become nested lambdas that match their parameter patterns.
struct Globals {
    std::map<std::string, TermPtr> definitions;
    std::map<std::string, std::size_t> arity;
    std::map<std::string, std::size_t> constructorArity;
};

std::shared_ptr<const Globals> buildGlobals(const Program &p);

/// Call-by-value, left to right.
ValuePtr evalTerm(const Env &env, const Term &t);
inline ValuePtr evalTerm(const Term &t) { return evalTerm(Env{}, t); }

/// Applies the top-level function `mainName` to `args`.
ValuePtr evalProgram(const Program &p, const std::string &mainName,
                     const std::vector<ValuePtr> &args);

/// Applies a function value to an argument.
ValuePtr applyValue(const ValuePtr &fn, const ValuePtr &arg);

} // namespace gg
